import json

import pytest

from tautcheck.tools.checkpoint import (
    Checkpoint,
    CheckpointEntry,
    CheckpointError,
    genus_case_count,
    load_checkpoint,
    save_checkpoint,
    validate_checkpoint,
)
from tautcheck.tools.records import (
    RecordsError,
    RecordWriter,
    make_header,
    read_records,
    truncate_to,
)

FINGERPRINT = {
    "g_min": 2,
    "ell": 1,
    "start_prime": 10007,
    "max_primes_before_rational": 8,
    "escalate_to_rational": True,
    "shard_size": 3,
}


def entry(g: int, shard: int, start: int, stop: int) -> CheckpointEntry:
    return CheckpointEntry(
        g=g,
        shard=shard,
        start=start,
        stop=stop,
        counts={"NonVanishing": stop - start},
        worst_primes_tried=1,
    )


@pytest.fixture
def checkpoint():
    # g=2 has 2 cases (one shard), g=3 has 5 (shards [0,3) and [3,5))
    return Checkpoint(
        order_version=1,
        fingerprint=dict(FINGERPRINT),
        g_max=4,
        output_offset=123,
        entries=[entry(2, 0, 0, 2), entry(3, 0, 0, 3)],
    )


def test_genus_case_count():
    assert genus_case_count(1, 2) == 2
    assert genus_case_count(1, 12) == 1002
    assert genus_case_count(2, 2) == 5


def test_save_and_load(tmp_path, checkpoint):
    path = tmp_path / "state" / "checkpoint.json"
    save_checkpoint(path, checkpoint)
    assert not path.with_name("checkpoint.json.tmp").exists()
    assert load_checkpoint(path) == checkpoint


def test_load_missing_returns_none(tmp_path):
    assert load_checkpoint(tmp_path / "none.json") is None


@pytest.mark.parametrize("content", ["{not json", "[]", '{"order_version": 1}'])
def test_corrupted_checkpoint(tmp_path, content):
    path = tmp_path / "checkpoint.json"
    path.write_text(content)
    with pytest.raises(CheckpointError):
        load_checkpoint(path)


def test_next_position(checkpoint):
    assert checkpoint.next_position() == (3, 3)
    checkpoint.entries.append(entry(3, 1, 3, 5))
    assert checkpoint.next_position() == (4, 0)
    assert not checkpoint.is_complete()
    empty = Checkpoint(order_version=1, fingerprint=dict(FINGERPRINT), g_max=2)
    assert empty.next_position() == (2, 0)


def test_validate_accepts_consistent_checkpoint(checkpoint):
    validate_checkpoint(checkpoint, dict(FINGERPRINT), g_max=4, order_version=1)
    validate_checkpoint(checkpoint, dict(FINGERPRINT), g_max=9, order_version=1)


def test_validate_rejects_other_order_version(checkpoint):
    with pytest.raises(CheckpointError, match="order version"):
        validate_checkpoint(checkpoint, dict(FINGERPRINT), g_max=4, order_version=2)


def test_validate_rejects_changed_settings(checkpoint):
    changed = dict(FINGERPRINT, start_prime=10009)
    with pytest.raises(CheckpointError, match="start_prime"):
        validate_checkpoint(checkpoint, changed, g_max=4, order_version=1)


def test_validate_rejects_lower_g_max(checkpoint):
    with pytest.raises(CheckpointError, match="g_max"):
        validate_checkpoint(checkpoint, dict(FINGERPRINT), g_max=3, order_version=1)


@pytest.mark.parametrize(
    "entries",
    [
        [entry(2, 0, 0, 2), entry(3, 1, 3, 5)],
        [entry(2, 0, 0, 1)],
        [entry(3, 0, 0, 3)],
        [entry(2, 0, 0, 2), entry(3, 0, 0, 3), entry(3, 0, 0, 3)],
        [entry(2, 1, 0, 2)],
    ],
)
def test_validate_rejects_gaps_and_overlaps(checkpoint, entries):
    checkpoint.entries = entries
    with pytest.raises(CheckpointError):
        validate_checkpoint(checkpoint, dict(FINGERPRINT), g_max=4, order_version=1)


# --- JSON-lines records --- #


def header():
    return make_header(ell=1, start_prime=10007, max_primes=8, escalate=True, order_version=1)


def test_writer_writes_header_and_records(tmp_path):
    path = tmp_path / "records.jsonl"
    with RecordWriter(path, header()) as writer:
        start = writer.open()
        end = writer.write([{"signature": "2", "g": 2}, {"signature": "1^2", "g": 2}])
    assert start == len(path.read_bytes().splitlines(keepends=True)[0])
    assert end == path.stat().st_size
    loaded_header, records = read_records(path)
    assert loaded_header == header()
    assert [r["signature"] for r in records] == ["2", "1^2"]
    assert path.read_text().splitlines()[1] == '{"g":2,"signature":"2"}'


def test_writer_truncates_to_checkpointed_offset(tmp_path):
    path = tmp_path / "records.jsonl"
    with RecordWriter(path, header()) as writer:
        writer.open()
        offset = writer.write([{"signature": "2"}])
        writer.write([{"signature": "1^2"}])
    with RecordWriter(path, header()) as writer:
        assert writer.open(offset) == offset
        writer.write([{"signature": "1^2"}])
    _, records = read_records(path)
    assert [r["signature"] for r in records] == ["2", "1^2"]


def test_writer_rejects_foreign_header(tmp_path):
    path = tmp_path / "records.jsonl"
    with RecordWriter(path, header()) as writer:
        writer.open()
    other = make_header(ell=2, start_prime=10007, max_primes=8, escalate=True, order_version=1)
    with pytest.raises(RecordsError):
        RecordWriter(path, other).open()


def test_writer_requires_open(tmp_path):
    with pytest.raises(RecordsError):
        RecordWriter(tmp_path / "records.jsonl", header()).write([{}])


def test_truncate_beyond_end(tmp_path):
    path = tmp_path / "records.jsonl"
    path.write_bytes(b"abc")
    with pytest.raises(RecordsError):
        truncate_to(path, 10)


def test_malformed_record_line(tmp_path):
    path = tmp_path / "records.jsonl"
    path.write_text(json.dumps(header()) + "\n{broken\n")
    with pytest.raises(RecordsError):
        read_records(path)
