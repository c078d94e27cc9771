import csv
import io
import json

import pytest

from soqlab import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_frt_example(capsys):
    code, out, _ = run(capsys, "check-frt", "--N", "5", "--q", "0.5", "--dim", "16", "--word", "s1,s2,s1")
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == "soq-lab/1" and rep["passed"]
    assert rep["summary"]["max_residual"] <= rep["checks"][0]["tol"]
    assert all(c["anchor"] for c in rep["checks"])


def test_branch_example_csv(capsys):
    code, out, _ = run(capsys, "branch", "--N", "7", "--alpha", "2,1,0", "--beta", "0,0")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert rows[0]["multiplicity"] == "2"


def test_ktheory_example(capsys):
    code, out, _ = run(capsys, "ktheory", "--case", "B", "--n", "2")
    rep = json.loads(out)
    assert code == 0
    assert rep["checks"][0]["defect_difference"] == 2.0


def test_malformed_flags_give_usage(capsys):
    code, out, err = run(capsys, "branch", "--alpha", "x,y")
    assert code == 2 and "usage" in err and out == ""
    code, _, err = run(capsys, "frobnicate")
    assert code == 2 and "usage" in err


@pytest.mark.parametrize("argv", [
    ["check-frt", "--q", "1.5"],
    ["check-frt", "--N", "5", "--word", "s1,s1"],
    ["check-frt", "--N", "5", "--word", "t3"],
    ["branch", "--N", "7", "--alpha", "0,1,0"],
    ["ktheory", "--case", "A", "--n", "2"],
    ["check-frt", "--q", "0.5", "--tol", "1e-20"],
])
def test_invalid_configuration_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "invalid configuration" in err


def test_config_file_and_env_output(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"N": [7], "alpha": [3, 1, 0], "beta": [1, 0]}))
    monkeypatch.setenv(cli.ENV_OUTPUT_DIR, str(tmp_path / "out"))
    code, out, _ = run(capsys, "branch", "--config", str(cfg), "--format", "json")
    assert code == 0 and out == ""
    rep = json.loads((tmp_path / "out" / "branch.json").read_text())
    assert rep["checks"][0]["alpha"] == [3, 1, 0]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"nonsense": 1}))
    code, _, _ = run(capsys, "branch", "--config", str(bad))
    assert code == 2


def test_failure_exit_1_names_anchor(monkeypatch, capsys):
    monkeypatch.setattr(cli, "trivial_multiplicity", lambda alpha, N: 99)
    code, out, _ = run(capsys, "branch", "--N", "7", "--alpha", "2,1,0", "--format", "json")
    rep = json.loads(out)
    assert code == 1 and not rep["passed"]
    assert rep["failures"] == [{"name": "trivial N=7 alpha=(2, 1, 0)", "anchor": cli.ANCHORS["branch_trivial"]}]


def test_deterministic_reports(tmp_path, capsys):
    argv = ["branch", "--N", "6", "--random-queries", "30", "--max-a1", "3", "--seed", "11", "--format", "json"]
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        assert cli.main(argv + ["-o", str(path)]) == 0
        outs.append(path.read_bytes())
    capsys.readouterr()
    assert outs[0] == outs[1]
    other = tmp_path / "r2.json"
    cli.main(argv[:-4] + ["--seed", "12", "--format", "json", "-o", str(other)])
    assert other.read_bytes() != outs[0]


@pytest.mark.parametrize("fmt", ["csv", "md"])
def test_other_formats(capsys, fmt):
    code, out, _ = run(capsys, "irreps", "--N", "5", "--q", "0.5", "--format", fmt)
    assert code == 0
    if fmt == "csv":
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 4 and all(r["passed"] == "True" for r in rows)
    else:
        assert out.startswith("# soq-lab report: irreps") and "| check |" in out


def test_hw_and_qlimit_commands(capsys):
    code, out, _ = run(capsys, "hw", "--N", "5", "--q", "0.5", "--lam-max", "2")
    assert code == 0 and json.loads(out)["summary"]["failed"] == 0
    code, out, _ = run(capsys, "qlimit", "--family", "B", "--q", "0.5", "--dim", "10", "--margin", "3")
    rep = json.loads(out)
    assert code == 0 and any(c["name"] == "continuity B" for c in rep["checks"])
