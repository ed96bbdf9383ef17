"""Units of work shared by the CLI and the sweep orchestrator."""

from tautcheck.tasks.base import BaseTask, TaskResult
from tautcheck.tasks.checker import (
    CheckInput,
    CheckTask,
    ShardOutput,
    ShardSpec,
    ShardTask,
    run_shard,
)
from tautcheck.tasks.reports import (
    HyperellipticReport,
    RangesInput,
    RangesOutput,
    RangesTask,
    VaryingInput,
    VaryingTask,
)

__all__ = [
    "BaseTask",
    "TaskResult",
    "CheckInput",
    "CheckTask",
    "ShardOutput",
    "ShardSpec",
    "ShardTask",
    "run_shard",
    "HyperellipticReport",
    "RangesInput",
    "RangesOutput",
    "RangesTask",
    "VaryingInput",
    "VaryingTask",
]
