import json

import pytest
from typer.testing import CliRunner

from tautcheck.cli import app
from tautcheck.config import DEFAULTS, ENV_PREFIX
from tautcheck.tools.records import read_records

runner = CliRunner()


@pytest.fixture(autouse=True)
def isolated(monkeypatch, tmp_path):
    for key in DEFAULTS:
        monkeypatch.delenv(ENV_PREFIX + key, raising=False)
    monkeypatch.chdir(tmp_path)


def run_json(*args: str) -> dict:
    result = runner.invoke(app, ["--quiet", "--json", *args])
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


def test_version():
    result = runner.invoke(app, ["version"])
    assert result.exit_code == 0
    assert "tautcheck v0.1.0" in result.stdout


def test_check_rational():
    data = run_json("check", "--mu", "2", "--rational")
    assert data["signature"] == "2"
    assert data["g"] == 2
    assert data["coefficient"] == "-20/9"
    assert data["status"] == "NonVanishing"


def test_check_modular():
    data = run_json("check", "--mu", "4", "--start-prime", "5", "--max-primes", "3")
    assert data["primes_tried"] == [7, 11]
    assert data["witness_prime"] == 11


def test_check_bad_signature():
    result = runner.invoke(app, ["--quiet", "check", "--mu", "3,x"])
    assert result.exit_code == 1


def test_ranges():
    data = run_json("ranges", "--mu", "1^58", "--no-relation")
    assert data["g"] == 30
    assert data["theorem1_bound"]["exact"] == "10"
    assert data["mgk_surjective"]["exact"] == "58/3"
    assert data["relation"] is None
    assert data["known_presentation"] is None


def test_ranges_specified():
    data = run_json("ranges", "--mu", "1^8", "--specified", "1,1", "--no-relation")
    assert data["m"] == 2
    assert data["theorem1_bound"]["exact"] == "1"


def test_sv_varying():
    data = run_json("sv", "--k", "1,1,1,1")
    assert data["g"] == 5
    assert data["mu"] == "1^8"
    assert data["pi2_c_area"] == "6"
    assert data["varying"] is True


def test_sv_hyperelliptic():
    data = run_json("sv", "--nu", "2,-1^6")
    assert data["pi2_c_area"] == "15/4"


def test_sv_needs_arguments():
    assert runner.invoke(app, ["--quiet", "sv"]).exit_code == 1
    assert runner.invoke(app, ["--quiet", "sv", "--nu", "-1^4", "--k", "1"]).exit_code == 1


def test_count_partitions():
    assert run_json("count-partitions", "10") == {"total": 10, "partitions": 42}
    data = run_json("count-partitions")
    assert data["total"] == 2539
    assert data["per_genus"]["12"] == 1002


def test_d_count():
    assert run_json("d-count", "--k", "1", "--i", "4") == {"k": 1, "d": {"4": 7}}


def test_c_series():
    data = run_json("c-series", "--order", "2")
    assert data["ring"] == "QQ"
    assert data["c"] == ["1", "5/6", "385/72"]
    assert data["log"] == ["5/6", "5"]


def test_c_series_rejects_small_primes():
    assert runner.invoke(app, ["--quiet", "c-series", "--prime", "3"]).exit_code == 1


def test_config_file(tmp_path):
    config_file = tmp_path / "sweep.env"
    config_file.write_text("TAUTCHECK_G_MAX=7\n")
    data = run_json("--config", str(config_file), "config")
    assert data["g_max"] == 7
    assert data["g_min"] == 2


def test_config_error():
    result = runner.invoke(app, ["--quiet", "--config", "missing.env", "config"])
    assert result.exit_code == 1


def test_verify_then_resume(tmp_path):
    args = ["--checkpoint", "cp.json", "--output", "out.jsonl"]
    paused = run_json(
        "verify", "--g-max", "4", "--shard-size", "4", "--workers", "1", "--max-shards", "2", *args
    )
    assert paused["complete"] is False
    assert paused["total"] == 2 + 4

    done = run_json("resume", "--workers", "1", *args)
    assert done["complete"] is True
    assert done["total"] == 18
    assert done["all_certified"] is True

    _, records = read_records(tmp_path / "out.jsonl")
    assert len(records) == 18


def test_resume_without_checkpoint():
    result = runner.invoke(app, ["--quiet", "resume", "--checkpoint", "none.json"])
    assert result.exit_code == 1
