"""Coordinates the sweep: shard planning, the worker pool, output and checkpoints."""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from multiprocessing import get_all_start_methods, get_context
from multiprocessing.context import BaseContext
from typing import Any, Iterable, Iterator

from sympy import isprime, nextprime

from tautcheck.config import SweepConfig
from tautcheck.series.core import QQ, prime_field
from tautcheck.series.special import c_series
from tautcheck.strata.combinatorics import ORDER_CONTRACT_VERSION
from tautcheck.strata.relations import Status
from tautcheck.tasks.base import TaskResult
from tautcheck.tasks.checker import ShardOutput, ShardSpec, run_shard
from tautcheck.tools.checkpoint import (
    Checkpoint,
    CheckpointEntry,
    CheckpointError,
    genus_case_count,
    load_checkpoint,
    save_checkpoint,
    validate_checkpoint,
)
from tautcheck.tools.records import RecordWriter, make_header

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNCERTIFIED = 2


class SweepError(Exception):
    """Raised when a sweep cannot start or a shard fails; progress so far stays resumable."""

    pass


@dataclass
class SweepSummary:
    """Totals over every checkpointed shard, not just those run this time."""

    g_min: int
    g_max: int
    ell: int
    total: int = 0
    counts: dict[str, int] = field(default_factory=dict)
    per_genus: dict[int, int] = field(default_factory=dict)
    max_primes_tried: int = 0
    uncertified: list[str] = field(default_factory=list)
    complete: bool = False

    @property
    def all_certified(self) -> bool:
        return self.complete and self.counts.get(Status.NON_VANISHING.value, 0) == self.total

    @property
    def exit_code(self) -> int:
        if self.uncertified:
            return EXIT_UNCERTIFIED
        return EXIT_OK

    def to_dict(self) -> dict[str, Any]:
        return {
            "g_min": self.g_min,
            "g_max": self.g_max,
            "ell": self.ell,
            "total": self.total,
            "counts": dict(sorted(self.counts.items())),
            "per_genus": {str(g): n for g, n in sorted(self.per_genus.items())},
            "max_primes_tried": self.max_primes_tried,
            "uncertified": list(self.uncertified),
            "complete": self.complete,
            "all_certified": self.all_certified,
        }


def pool_context() -> BaseContext:
    """Fork wherever the platform has it, so workers inherit the warmed C(t) tables."""
    if "fork" in get_all_start_methods():
        return get_context("fork")
    logger.warning("fork is unavailable; each worker will rebuild its C(t) tables")
    return get_context()


def summarize(checkpoint: Checkpoint, g_max: int) -> SweepSummary:
    fp = checkpoint.fingerprint
    summary = SweepSummary(g_min=fp["g_min"], g_max=g_max, ell=fp["ell"])
    counts: Counter = Counter()
    for entry in checkpoint.entries:
        size = entry.stop - entry.start
        summary.total += size
        summary.per_genus[entry.g] = summary.per_genus.get(entry.g, 0) + size
        counts.update(entry.counts)
        summary.max_primes_tried = max(summary.max_primes_tried, entry.worst_primes_tried)
        summary.uncertified.extend(entry.uncertified)
    summary.counts = dict(counts)
    summary.complete = checkpoint.is_complete()
    return summary


class SweepOrchestrator:
    """Runs the relation check over every positive partition of ell*(2g-2), g_min <= g <= g_max.

    Workers only see ShardSpecs and send back ShardOutputs; this process is
    the single writer of both the records file and the checkpoint. Shards are
    consumed in plan order, so the output is the same for any worker count.
    """

    def __init__(self, config: SweepConfig):
        self.config = config

    def sweep(self, max_shards: int | None = None) -> SweepSummary:
        """Start a sweep, or continue one whose checkpoint matches the config."""
        return self._run(self._load_or_create(require_existing=False), max_shards)

    def resume(self, max_shards: int | None = None) -> SweepSummary:
        """Continue from the checkpoint's high-water mark; the checkpoint must exist."""
        return self._run(self._load_or_create(require_existing=True), max_shards)

    def _load_or_create(self, require_existing: bool) -> Checkpoint:
        config = self.config
        checkpoint = load_checkpoint(config.checkpoint_path)
        if checkpoint is None:
            if require_existing:
                raise CheckpointError(f"No checkpoint at {config.checkpoint_path} to resume from")
            if config.output_path.exists() and config.output_path.stat().st_size > 0:
                raise SweepError(
                    f"{config.output_path} already exists without a checkpoint; "
                    "move it away or point output_path elsewhere"
                )
            logger.info(f"Starting a new sweep for g={config.g_min}..{config.g_max}, ell={config.ell}")
            return Checkpoint(
                order_version=ORDER_CONTRACT_VERSION,
                fingerprint=config.fingerprint(),
                g_max=config.g_max,
            )
        validate_checkpoint(checkpoint, config.fingerprint(), config.g_max, ORDER_CONTRACT_VERSION)
        if config.g_max > checkpoint.g_max:
            logger.info(f"Extending sweep from g_max={checkpoint.g_max} to {config.g_max}")
        checkpoint.g_max = config.g_max
        g, start = checkpoint.next_position()
        logger.info(f"Resuming from g={g}, partition index {start} ({len(checkpoint.entries)} shards done)")
        return checkpoint

    def plan(self, checkpoint: Checkpoint) -> Iterator[ShardSpec]:
        """Shards after the checkpoint's high-water mark, in output order."""
        config = self.config
        g, start = checkpoint.next_position()
        while g <= config.g_max:
            count = genus_case_count(config.ell, g)
            while start < count:
                stop = min(start + config.shard_size, count)
                yield ShardSpec(
                    g=g,
                    ell=config.ell,
                    shard_index=start // config.shard_size,
                    start=start,
                    stop=stop,
                    start_prime=config.start_prime,
                    max_primes=config.max_primes_before_rational,
                    escalate=config.escalate_to_rational,
                )
                start = stop
            g, start = g + 1, 0

    def _warm_caches(self) -> None:
        p = self.config.start_prime
        p = p if isprime(p) else int(nextprime(p))
        for ring in (QQ, prime_field(p)):
            for order in range(self.config.g_max // 3 + 3):
                c_series(order, ring)

    def _results(self, specs: Iterable[ShardSpec]) -> Iterator[TaskResult[ShardOutput]]:
        if self.config.workers == 1:
            yield from map(run_shard, specs)
            return
        self._warm_caches()
        ctx = pool_context()
        with ctx.Pool(processes=self.config.workers) as pool:
            yield from pool.imap(run_shard, specs, chunksize=1)

    def _run(self, checkpoint: Checkpoint, max_shards: int | None) -> SweepSummary:
        config = self.config
        header = make_header(
            ell=config.ell,
            start_prime=config.start_prime,
            max_primes=config.max_primes_before_rational,
            escalate=config.escalate_to_rational,
            order_version=ORDER_CONTRACT_VERSION,
        )
        specs: Iterable[ShardSpec] = self.plan(checkpoint)
        if max_shards is not None:
            specs = itertools.islice(specs, max_shards)

        resuming = bool(checkpoint.entries) or checkpoint.output_offset > 0
        with RecordWriter(config.output_path, header) as writer:
            offset = writer.open(checkpoint.output_offset if resuming else None)
            if not resuming:
                checkpoint.output_offset = offset
                save_checkpoint(config.checkpoint_path, checkpoint)

            for result in self._results(specs):
                if not result.success:
                    raise SweepError(f"Shard failed: {result.error}")
                shard = result.output
                offset = writer.write(shard.records)
                checkpoint.entries.append(
                    CheckpointEntry(
                        g=shard.spec.g,
                        shard=shard.spec.shard_index,
                        start=shard.spec.start,
                        stop=shard.spec.stop,
                        counts=shard.status_counts,
                        worst_primes_tried=shard.worst_primes_tried,
                        uncertified=shard.uncertified,
                        finished_at=shard.finished_at,
                    )
                )
                checkpoint.output_offset = offset
                save_checkpoint(config.checkpoint_path, checkpoint)
                logger.info(
                    f"Checkpointed g={shard.spec.g} shard {shard.spec.shard_index} "
                    f"[{shard.spec.start}, {shard.spec.stop})"
                )

        summary = summarize(checkpoint, config.g_max)
        if summary.complete:
            logger.info(f"Sweep complete: {summary.total} cases, {len(summary.uncertified)} not certified")
        else:
            g, start = checkpoint.next_position()
            logger.info(f"Sweep paused before g={g}, partition index {start}")
        return summary
