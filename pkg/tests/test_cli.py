import json
import subprocess
import sys
from pathlib import Path

import pytest

from dixmier.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, run_cli
from dixmier.config import ConfigError, RunConfig, load_config_file

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(argv, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main(argv + ["--out", str(out)])
    return code, (json.loads(out.read_text()) if out.exists() else None), out


def test_verify_axioms_a1(tmp_path, capsys):
    code, data, _ = run(["verify", "--example", "a1", "--check", "axioms"], tmp_path)
    assert code == EXIT_OK
    assert data["passed"] and data["cutoff"] == 6
    assert "all checks passed" in capsys.readouterr().out


def test_json_to_stdout_summary_to_stderr(capsys):
    assert main(["kernel", "--example", "a1", "--cutoff", "4"]) == EXIT_OK
    captured = capsys.readouterr()
    rows = json.loads(captured.out)
    assert [r["dimKernel"] for r in rows] == [0, 0, 1]
    assert "kernel 1" in captured.err


def test_table_and_lambda(tmp_path):
    code, rows, _ = run(["table", "--cutoff", "2"], tmp_path)
    assert code == EXIT_OK and len(rows) == 15
    code, data, _ = run(["lambda", "--cutoff", "4"], tmp_path, "lam.json")
    assert code == EXIT_OK and data["passed"]
    assert set(data["matrices"]) == {"e", "f", "h"}


@pytest.mark.parametrize("argv", [
    ["verify", "--cutoff", "1"],
    ["verify", "--example", "b7"],
    ["verify", "--check", "nonsense"],
    ["verify", "--jobs", "0"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE
    assert "usage error" in capsys.readouterr().err


def test_bad_config_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"example": "a1", "colour": "red"}))
    with pytest.raises(ConfigError):
        load_config_file(str(bad))
    assert main(["verify", "--config", str(bad)]) == EXIT_USAGE


def test_flags_override_config(tmp_path):
    code, data, _ = run(["verify", "--config", str(FIXTURES / "broken_beta.json"),
                         "--example", "a1"], tmp_path)
    assert code == EXIT_OK and data["example"] == "a1"


@pytest.mark.parametrize("fixture,axiom", [("broken_beta.json", "V"), ("broken_trace.json", "VI")])
def test_broken_fixtures(tmp_path, fixture, axiom):
    code, data, _ = run(["verify", "--config", str(FIXTURES / fixture)], tmp_path)
    assert code == EXIT_FAIL
    reports = {r["check"]: r for r in data["checks"][0]["reports"]}
    bad = reports[f"axiom-{axiom}"]
    assert bad["status"] == "fail" and bad["failures"][0]["detail"]


def test_run_cli_config_object(tmp_path):
    cfg = RunConfig(example="a1-invariants", checks=("axioms", "star"), out=str(tmp_path / "o.json"))
    assert run_cli(cfg) == EXIT_OK


def test_parallel_output_is_byte_identical(tmp_path):
    serial = tmp_path / "serial.json"
    parallel = tmp_path / "parallel.json"
    base = ["verify", "--example", "a1", "--check", "axioms,star,kernel"]
    assert main(base + ["--out", str(serial)]) == EXIT_OK
    assert main(base + ["--jobs", "3", "--out", str(parallel)]) == EXIT_OK
    assert serial.read_bytes() == parallel.read_bytes()


def test_module_entry_point(tmp_path):
    out = tmp_path / "k.json"
    proc = subprocess.run([sys.executable, "-m", "dixmier", "kernel", "--cutoff", "2", "--out", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(out.read_text())[1]["dimU"] == 4
