"""Checkpoint file: which partition-index ranges of which genera are done."""

import json
import logging
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from tautcheck.strata.combinatorics import partition_count

logger = logging.getLogger(__name__)


class CheckpointError(Exception):
    """Raised for a corrupted checkpoint or one that does not match the config."""

    pass


@dataclass
class CheckpointEntry:
    """One finished shard: partitions [start, stop) of ell*(2g-2)."""

    g: int
    shard: int
    start: int
    stop: int
    counts: dict[str, int]
    worst_primes_tried: int
    uncertified: list[str] = field(default_factory=list)
    finished_at: str = ""


@dataclass
class Checkpoint:
    order_version: int
    fingerprint: dict[str, Any]
    g_max: int
    output_offset: int = 0
    entries: list[CheckpointEntry] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Checkpoint":
        try:
            entries = [CheckpointEntry(**entry) for entry in data["entries"]]
            return cls(
                order_version=int(data["order_version"]),
                fingerprint=dict(data["fingerprint"]),
                g_max=int(data["g_max"]),
                output_offset=int(data["output_offset"]),
                entries=entries,
            )
        except (KeyError, TypeError, ValueError) as e:
            raise CheckpointError(f"Checkpoint is missing or has malformed fields: {e}") from e

    def next_position(self) -> tuple[int, int]:
        """(g, first unprocessed partition index) after the high-water mark."""
        if not self.entries:
            return self.fingerprint["g_min"], 0
        last = self.entries[-1]
        if last.stop >= genus_case_count(self.fingerprint["ell"], last.g):
            return last.g + 1, 0
        return last.g, last.stop

    def is_complete(self) -> bool:
        g, _ = self.next_position()
        return g > self.g_max


def genus_case_count(ell: int, g: int) -> int:
    """Number of positive partitions of ell*(2g-2)."""
    return partition_count(ell * (2 * g - 2))


def load_checkpoint(path: Path) -> Checkpoint | None:
    """Read a checkpoint; None when the file does not exist."""
    path = Path(path)
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise CheckpointError(f"Cannot read checkpoint {path}: {e}") from e
    if not isinstance(data, dict):
        raise CheckpointError(f"Checkpoint {path} is not a JSON object")
    return Checkpoint.from_dict(data)


def save_checkpoint(path: Path, checkpoint: Checkpoint) -> None:
    """Write to a temp file and rename over the old checkpoint."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(json.dumps(checkpoint.to_dict(), indent=2, sort_keys=True))
    os.replace(tmp, path)
    logger.debug(f"Checkpoint saved: {len(checkpoint.entries)} shards, offset {checkpoint.output_offset}")


def validate_checkpoint(
    checkpoint: Checkpoint,
    fingerprint: dict[str, Any],
    g_max: int,
    order_version: int,
) -> None:
    """Refuse a checkpoint that cannot be continued under the given settings.

    Raises:
        CheckpointError: On any mismatch or a gap/overlap between entries
    """
    if checkpoint.order_version != order_version:
        raise CheckpointError(
            f"Checkpoint uses partition order version {checkpoint.order_version}, "
            f"this build uses {order_version}"
        )
    if checkpoint.fingerprint != fingerprint:
        changed = sorted(
            key
            for key in set(fingerprint) | set(checkpoint.fingerprint)
            if fingerprint.get(key) != checkpoint.fingerprint.get(key)
        )
        raise CheckpointError(f"Checkpoint was made with different settings: {', '.join(changed)}")
    if g_max < checkpoint.g_max:
        raise CheckpointError(
            f"g_max can only be raised on resume (checkpoint has {checkpoint.g_max}, got {g_max})"
        )
    if checkpoint.output_offset < 0:
        raise CheckpointError(f"Negative output offset {checkpoint.output_offset}")

    ell = fingerprint["ell"]
    shard_size = fingerprint["shard_size"]
    g, start = fingerprint["g_min"], 0
    for entry in checkpoint.entries:
        if start >= genus_case_count(ell, g):
            g, start = g + 1, 0
        expected_stop = min(start + shard_size, genus_case_count(ell, g))
        if (entry.g, entry.start, entry.stop) != (g, start, expected_stop):
            raise CheckpointError(
                f"Checkpoint entry g={entry.g} [{entry.start}, {entry.stop}) does not continue "
                f"from g={g} index {start}"
            )
        if entry.shard != start // shard_size:
            raise CheckpointError(f"Checkpoint entry g={entry.g} has wrong shard index {entry.shard}")
        start = entry.stop
