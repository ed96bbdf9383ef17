"""JSON-lines output for sweep records.

The first line is a schema header; every following line is one
VerificationRecord. Lines are written as bytes so the checkpoint can store
an exact byte offset for the end of the last completed shard.
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Iterable

logger = logging.getLogger(__name__)

RECORD_SCHEMA = "tautcheck.records"
RECORD_SCHEMA_VERSION = 1


class RecordsError(Exception):
    """Raised when an output file is unreadable or belongs to another sweep."""

    pass


def encode_line(data: dict[str, Any]) -> bytes:
    return (json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")


def make_header(ell: int, start_prime: int, max_primes: int, escalate: bool, order_version: int) -> dict[str, Any]:
    return {
        "schema": RECORD_SCHEMA,
        "version": RECORD_SCHEMA_VERSION,
        "ell": ell,
        "start_prime": start_prime,
        "max_primes_before_rational": max_primes,
        "escalate_to_rational": escalate,
        "order_version": order_version,
    }


class RecordWriter:
    """Append-only writer that fsyncs after every batch.

    Args:
        path: Output file; created with `header` as its first line if absent
        header: Expected header; an existing file must start with exactly this
    """

    def __init__(self, path: Path, header: dict[str, Any]):
        self.path = Path(path)
        self.header = header
        self._handle = None

    def open(self, offset: int | None = None) -> int:
        """Open for appending, first cutting the file back to `offset` if given.

        Returns:
            The byte offset where the next record will go
        """
        self.path.parent.mkdir(parents=True, exist_ok=True)
        if self.path.exists() and self.path.stat().st_size > 0:
            existing = read_header(self.path)
            if existing != self.header:
                raise RecordsError(
                    f"{self.path} was written by a sweep with a different header: {existing}"
                )
            if offset is not None:
                truncate_to(self.path, offset)
            self._handle = open(self.path, "ab")
        else:
            if offset not in (None, 0):
                raise RecordsError(f"{self.path} is missing but the checkpoint expects {offset} bytes")
            self._handle = open(self.path, "wb")
            self._handle.write(encode_line(self.header))
            self._sync()
        return self._handle.tell()

    def write(self, records: Iterable[dict[str, Any]]) -> int:
        """Append records and return the new end offset."""
        if self._handle is None:
            raise RecordsError("RecordWriter.open() must be called first")
        for record in records:
            self._handle.write(encode_line(record))
        self._sync()
        return self._handle.tell()

    def _sync(self) -> None:
        self._handle.flush()
        os.fsync(self._handle.fileno())

    def close(self) -> None:
        if self._handle is not None:
            self._handle.close()
            self._handle = None

    def __enter__(self) -> "RecordWriter":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def truncate_to(path: Path, offset: int) -> None:
    """Drop everything after `offset` (a shard written after the last checkpoint)."""
    size = Path(path).stat().st_size
    if size < offset:
        raise RecordsError(f"{path} has {size} bytes, fewer than the checkpointed {offset}")
    if size > offset:
        logger.info(f"Truncating {path} from {size} to {offset} bytes")
        with open(path, "r+b") as f:
            f.truncate(offset)


def read_header(path: Path) -> dict[str, Any]:
    with open(path, "rb") as f:
        first = f.readline()
    try:
        header = json.loads(first)
    except json.JSONDecodeError as e:
        raise RecordsError(f"{path} does not start with a JSON header: {e}") from e
    if not isinstance(header, dict) or header.get("schema") != RECORD_SCHEMA:
        raise RecordsError(f"{path} is not a {RECORD_SCHEMA} file")
    return header


def read_records(path: Path) -> tuple[dict[str, Any], list[dict[str, Any]]]:
    """Load the header and every record line."""
    header = read_header(path)
    records = []
    with open(path, "rb") as f:
        f.readline()
        for number, line in enumerate(f, start=2):
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as e:
                raise RecordsError(f"{path}:{number}: malformed record: {e}") from e
    return header, records
