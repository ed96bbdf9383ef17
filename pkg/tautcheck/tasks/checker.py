"""Relation-check tasks: one signature, or one shard of a sweep."""

import itertools
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any

from tautcheck.strata.combinatorics import partitions_of
from tautcheck.strata.relations import (
    ModularMode,
    RationalMode,
    Status,
    VerificationRecord,
    check_conjecture,
)
from tautcheck.strata.signatures import StratumSignature, parse_signature
from tautcheck.tasks.base import BaseTask, TaskResult


@dataclass
class CheckInput:
    """Input for the single-signature check."""

    signature_text: str
    ell: int = 1
    rational: bool = False
    start_prime: int = 10007
    max_primes: int = 8
    escalate: bool = True

    def mode(self) -> RationalMode | ModularMode:
        if self.rational:
            return RationalMode()
        return ModularMode(
            start_prime=self.start_prime, max_primes=self.max_primes, escalate=self.escalate
        )


class CheckTask(BaseTask[CheckInput, VerificationRecord]):
    """Parse a signature and run the non-vanishing check on it."""

    def __init__(self):
        super().__init__("CheckTask")

    def _process(self, input_data: CheckInput) -> VerificationRecord:
        sig = parse_signature(input_data.signature_text, input_data.ell)
        self.logger.info(f"Checking {sig} (ell={sig.ell}, g={sig.genus})")
        return check_conjecture(sig, input_data.mode())


@dataclass(frozen=True)
class ShardSpec:
    """Contiguous range [start, stop) of partition indices for one genus."""

    g: int
    ell: int
    shard_index: int
    start: int
    stop: int
    start_prime: int
    max_primes: int
    escalate: bool

    @property
    def total(self) -> int:
        return self.ell * (2 * self.g - 2)


@dataclass
class ShardOutput:
    """Records of one shard plus the summary the checkpoint keeps."""

    spec: ShardSpec
    records: list[dict[str, Any]]
    status_counts: dict[str, int]
    worst_primes_tried: int
    uncertified: list[str] = field(default_factory=list)
    finished_at: str = ""


class ShardTask(BaseTask[ShardSpec, ShardOutput]):
    """Check every positive partition of ell*(2g-2) in one index range."""

    def __init__(self):
        super().__init__("ShardTask")

    def _process(self, input_data: ShardSpec) -> ShardOutput:
        spec = input_data
        mode = ModularMode(
            start_prime=spec.start_prime, max_primes=spec.max_primes, escalate=spec.escalate
        )
        records: list[dict[str, Any]] = []
        counts: Counter = Counter()
        worst = 0
        uncertified: list[str] = []

        for parts in itertools.islice(partitions_of(spec.total), spec.start, spec.stop):
            sig = StratumSignature(ell=spec.ell, parts=parts)
            record: VerificationRecord = check_conjecture(sig, mode)
            data = record.to_dict()
            records.append(data)
            counts[record.status.value] += 1
            worst = max(worst, len(record.primes_tried))
            if record.status != Status.NON_VANISHING:
                uncertified.append(data["signature"])
                self.logger.warning(f"Not certified: {data['signature']} ({record.status.value})")

        self.logger.info(
            f"g={spec.g} shard {spec.shard_index}: {len(records)} cases, "
            f"{counts[Status.NON_VANISHING.value]} certified"
        )
        return ShardOutput(
            spec=spec,
            records=records,
            status_counts=dict(counts),
            worst_primes_tried=worst,
            uncertified=uncertified,
            finished_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        )


def run_shard(spec: ShardSpec) -> TaskResult[ShardOutput]:
    """Pool entry point (module-level so it pickles)."""
    return ShardTask().process(spec)
