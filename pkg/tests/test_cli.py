import json
import subprocess
import sys

import pytest

from cdloops.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_bad_dim_log_is_usage_error(capsys):
    for bad in ("9", "-1", "x"):
        with pytest.raises(SystemExit) as exc:
            main(["build", "--dim-log", bad])
        assert exc.value.code == 2


def test_bad_format_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["zerodiv", "--format", "csv"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["lattice", "--by-class"])
    assert exc.value.code == 2


def test_build_json(capsys, tmp_path):
    code, out = run(capsys, "build", "--dim-log", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["order"] == 8 and len(doc["table"]) == 64
    path = tmp_path / "h.json"
    code, out = run(capsys, "build", "--dim-log", "2", "--out", str(path))
    assert out == "order 8, 4 basis elements\n"
    assert json.loads(path.read_text()) == doc


def test_report_passes_at_sedenions(capsys):
    code, out = run(capsys, "report", "--dim-log", "4")
    assert code == 0
    assert "FAIL" not in out and out.rstrip().endswith("checks passed")


def test_report_json(capsys):
    code, out = run(capsys, "report", "--dim-log", "3", "--format", "json")
    assert code == 0 and json.loads(out)["all_pass"] is True


def test_subloops_csv(capsys):
    code, out = run(capsys, "subloops", "--dim-log", "4", "--format", "csv", "--check")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "order,support,normal" and len(lines) == 1 + 68


def test_classify_and_identities(capsys):
    code, out = run(capsys, "classify", "--dim-log", "4", "--check")
    assert code == 0 and "O~_L" in out
    code, out = run(capsys, "identities", "--dim-log", "4", "--format", "json", "--check")
    doc = json.loads(out)
    assert code == 0 and doc["loop"]["MOUFANG"]["holds"] is False
    assert doc["algebra"]["FLEX"] == {"holds": True, "certified": True, "witness": None}


def test_zerodiv_and_lattice(capsys):
    code, out = run(capsys, "zerodiv", "--dim-log", "4", "--check")
    assert code == 0 and "= 0" in out
    code, out = run(capsys, "lattice", "--dim-log", "2")
    assert out == "6 nodes, 7 cover edges, height 3\nmodular: true\n"
    code, out = run(capsys, "lattice", "--dim-log", "4", "--format", "dot", "--by-class")
    assert out.count("label=") == 8  # graph label plus 7 classes


def test_check_failure_exits_one(capsys, monkeypatch):
    import cdloops.analysis as analysis

    real = analysis.load_expected

    def wrong(n):
        doc = real(n)
        doc["lattice_nodes"] += 1
        return doc

    monkeypatch.setattr(analysis, "load_expected", wrong)
    code = main(["lattice", "--dim-log", "3", "--check"])
    assert code == 1
    assert "FAIL" in capsys.readouterr().err


def test_output_is_deterministic(capsys):
    outs = [run(capsys, "subloops", "--dim-log", "3", "--format", "json")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cdloops", "build", "--dim-log", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.startswith("order 4, 2 basis elements")
