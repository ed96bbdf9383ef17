"""Persistence for sweeps: checkpoint state and JSON-lines records."""

from tautcheck.tools.checkpoint import (
    Checkpoint,
    CheckpointEntry,
    CheckpointError,
    load_checkpoint,
    save_checkpoint,
    validate_checkpoint,
)
from tautcheck.tools.records import RecordsError, RecordWriter, read_records

__all__ = [
    "Checkpoint",
    "CheckpointEntry",
    "CheckpointError",
    "load_checkpoint",
    "save_checkpoint",
    "validate_checkpoint",
    "RecordsError",
    "RecordWriter",
    "read_records",
]
