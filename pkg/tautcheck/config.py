"""Load sweep configuration from .env files, the environment and CLI flags."""

import os
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any

from dotenv import dotenv_values, load_dotenv

ENV_PREFIX = "TAUTCHECK_"


@dataclass
class SweepConfig:
    """Typed configuration object for a sweep."""

    # Genus range
    g_min: int
    g_max: int
    ell: int

    # Relation check
    start_prime: int
    max_primes_before_rational: int
    escalate_to_rational: bool

    # Execution
    workers: int
    shard_size: int
    checkpoint_path: Path
    output_path: Path

    def fingerprint(self) -> dict[str, Any]:
        """Fields a checkpoint must agree on before it can be resumed."""
        return {
            "g_min": self.g_min,
            "ell": self.ell,
            "start_prime": self.start_prime,
            "max_primes_before_rational": self.max_primes_before_rational,
            "escalate_to_rational": self.escalate_to_rational,
            "shard_size": self.shard_size,
        }

    def as_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["checkpoint_path"] = str(self.checkpoint_path)
        data["output_path"] = str(self.output_path)
        return data


class ConfigError(Exception):
    """Raised when configuration is invalid or missing."""

    pass


DEFAULTS: dict[str, str] = {
    "G_MIN": "2",
    "G_MAX": "12",
    "ELL": "1",
    "START_PRIME": "10007",
    "MAX_PRIMES_BEFORE_RATIONAL": "8",
    "ESCALATE_TO_RATIONAL": "true",
    "WORKERS": str(os.cpu_count() or 1),
    "SHARD_SIZE": "4096",
    "CHECKPOINT_PATH": "tautcheck-checkpoint.json",
    "OUTPUT_PATH": "tautcheck-records.jsonl",
}

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def load_config(config_file: Path | None = None, **overrides: Any) -> SweepConfig:
    """Load configuration.

    Precedence: keyword overrides (CLI flags, None means unset) > the
    KEY=VALUE file given by `config_file` > TAUTCHECK_* environment variables
    (a .env in the working directory is loaded first) > defaults.

    Returns:
        SweepConfig: Typed configuration object

    Raises:
        ConfigError: If a value is malformed or the combination is inconsistent
    """
    load_dotenv()

    file_values: dict[str, str | None] = {}
    if config_file is not None:
        if not Path(config_file).exists():
            raise ConfigError(f"Config file not found: {config_file}")
        file_values = dotenv_values(config_file)

    problems: list[str] = []

    def get_value(key: str) -> str:
        override = overrides.get(key.lower())
        if override is not None:
            return str(override)
        for source in (file_values.get(ENV_PREFIX + key), file_values.get(key)):
            if source:
                return source
        return os.getenv(ENV_PREFIX + key, DEFAULTS[key])

    def get_int(key: str) -> int:
        raw = get_value(key)
        try:
            return int(raw)
        except ValueError:
            problems.append(f"{ENV_PREFIX}{key}={raw!r} is not an integer")
            return 0

    def get_bool(key: str) -> bool:
        raw = get_value(key).strip().lower()
        if raw in _TRUE:
            return True
        if raw not in _FALSE:
            problems.append(f"{ENV_PREFIX}{key}={raw!r} is not a boolean")
        return False

    config = SweepConfig(
        g_min=get_int("G_MIN"),
        g_max=get_int("G_MAX"),
        ell=get_int("ELL"),
        start_prime=get_int("START_PRIME"),
        max_primes_before_rational=get_int("MAX_PRIMES_BEFORE_RATIONAL"),
        escalate_to_rational=get_bool("ESCALATE_TO_RATIONAL"),
        workers=get_int("WORKERS"),
        shard_size=get_int("SHARD_SIZE"),
        checkpoint_path=Path(get_value("CHECKPOINT_PATH")),
        output_path=Path(get_value("OUTPUT_PATH")),
    )

    if not problems:
        if config.g_min < 2:
            problems.append(f"g_min must be at least 2, got {config.g_min}")
        if config.g_min > config.g_max:
            problems.append(f"g_min ({config.g_min}) must not exceed g_max ({config.g_max})")
        if config.ell < 1:
            problems.append(f"ell must be positive, got {config.ell}")
        if config.start_prime < 5:
            problems.append(f"start_prime must be at least 5, got {config.start_prime}")
        if config.max_primes_before_rational < 1:
            problems.append(
                f"max_primes_before_rational must be positive, got {config.max_primes_before_rational}"
            )
        if config.workers < 1:
            problems.append(f"workers must be positive, got {config.workers}")
        if config.shard_size < 1:
            problems.append(f"shard_size must be positive, got {config.shard_size}")

    if problems:
        raise ConfigError(
            "Invalid configuration:\n  "
            + "\n  ".join(problems)
            + "\nSet them via CLI flags, a --config file, or TAUTCHECK_* environment variables."
        )

    return config
