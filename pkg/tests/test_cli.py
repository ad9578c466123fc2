import json
import subprocess
import sys

import pytest

from cltlab.cli import EXIT_DISAGREE, EXIT_INVALID, EXIT_OK, main

REPORT_KEYS = {"tool_version", "command", "inputs", "results", "disagreements", "timing_ms"}


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    return code, json.loads(capsys.readouterr().out)


def test_check_json_shape(capsys):
    code, rep = run_json(capsys, "check", "sl23")
    assert code == EXIT_OK
    assert set(rep) == REPORT_KEYS
    assert rep["command"] == "check" and rep["inputs"] == {"spec": "sl23", "lattice": False}
    assert rep["results"]["missing_orders"] == [12]
    assert rep["timing_ms"] is None and rep["results"]["timing"] is None


def test_check_with_cache(capsys, tmp_path):
    code, rep = run_json(capsys, "check", "zq3xzp:7,2", "--cache-dir", str(tmp_path))
    assert code == EXIT_OK and rep["results"]["missing_orders"] == [14, 28]
    assert list(tmp_path.iterdir())
    code, again = run_json(capsys, "check", "zq3xzp:7,2", "--cache-dir", str(tmp_path))
    assert again == rep


def test_timing_flag(capsys):
    code, rep = run_json(capsys, "check", "q8", "--timing")
    assert isinstance(rep["timing_ms"], float)


def test_human_output(capsys):
    assert main(["check", "sl23"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "missing  [12]" in out and "n_3=4" in out


def test_predict(capsys):
    code, rep = run_json(capsys, "predict", "7", "2")
    assert code == EXIT_OK and rep["results"]["predicted_exists"]
    assert rep["results"]["observed_exists"] is None


def test_verify_agreement(capsys):
    code, rep = run_json(capsys, "verify", "13", "3")
    assert code == EXIT_OK and rep["disagreements"] == []
    assert rep["results"]["agreement"] is True


def test_verify_disagreement_exit_1(capsys):
    code, rep = run_json(capsys, "verify", "2", "3", "--exhaustive")
    assert code == EXIT_DISAGREE
    assert rep["disagreements"][0]["kind"] == "prediction"
    assert rep["results"]["observed_exists"] is False


@pytest.mark.parametrize(
    "argv",
    [["check", "cyclic:"], ["check", "Foo"], ["predict", "4", "3"], ["verify", "3", "3"], ["aut", "2"], ["check", "zq3xzp:5,3"]],
)
def test_invalid_input_exit_2(capsys, argv):
    assert main(argv) == EXIT_INVALID
    assert "invalid input" in capsys.readouterr().err


def test_bound_exit_2(capsys, monkeypatch):
    monkeypatch.setenv("CLTLAB_MAX_ORDER", "100")
    assert main(["verify", "13", "3"]) == EXIT_INVALID
    assert "bound exceeded" in capsys.readouterr().err


def test_unknown_corollary_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["corollary", "7.7"])
    assert exc.value.code == 2


def test_aut_mismatch_exit_1(capsys):
    code, rep = run_json(capsys, "aut", "3")
    assert code == EXIT_DISAGREE
    assert [d["group"] for d in rep["disagreements"]] == ["mod:3"]


def test_catalog(capsys):
    code, rep = run_json(capsys, "catalog", "order24")
    assert code == EXIT_OK
    assert rep["results"]["summary"] == {"types": 15, "abelian": 3, "non_clt": 1}


def test_corollary(capsys):
    code, rep = run_json(capsys, "corollary", "2.1")
    assert code == EXIT_OK and rep["inputs"] == {"id": "2.1", "max_p": 13, "max_q": 5}
    code, _ = run_json(capsys, "corollary", "2.2a", "--max-p", "3", "--max-q", "3")
    assert code == EXIT_DISAGREE


def test_scan_empty_range(capsys):
    code, rep = run_json(capsys, "scan", "--max-p", "1", "--max-q", "1")
    assert code == EXIT_OK and rep["results"] == []
    assert main(["scan", "--max-p", "1", "--max-q", "1"]) == EXIT_OK
    assert "(no pairs)" in capsys.readouterr().out


def test_scan_inputs_exclude_jobs(capsys):
    code, rep = run_json(capsys, "scan", "--max-p", "7", "--max-q", "2", "--no-exhaustive", "--jobs", "2")
    assert rep["inputs"] == {"max_p": 7, "max_q": 2, "exhaustive": False}
    assert [(r["p"], r["q"]) for r in rep["results"]] == [(3, 2), (5, 2), (7, 2)]


def test_scan_jobs_byte_identical():
    def run(jobs):
        cmd = [sys.executable, "-m", "cltlab.cli", "scan", "--max-p", "7", "--max-q", "3", "--json", "--jobs", str(jobs)]
        return subprocess.run(cmd, capture_output=True, check=False).stdout

    a, b = run(1), run(4)
    assert a and a == b
