import json
import subprocess
import sys

import pytest

from krich.cli import run

G1N2 = ["--family", "g1n2", "--params", "a=2;b=3;e=-1;pi=5"]


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_no_arguments_is_a_usage_error(capsys):
    code, _, err = call(capsys)
    assert code == 2 and "usage" in err


def test_curve_build_json(capsys):
    code, out, _ = call(capsys, "curve", "build", *G1N2, "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["genus"] == 1 and data["weights"] == [1, 0]
    assert [g["name"] for g in data["generators"]] == ["h12", "f1", "h1"]


def test_params_from_json_file(capsys, tmp_path):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"a": "2", "b": "3", "e": "-1", "pi": "5"}))
    code, out, _ = call(capsys, "curve", "build", "--family", "g1n2", "--params", f"@{f}")
    assert code == 0 and "h1^2 - f1^3 - 5*f1 + 41" in out


def test_missing_parameter(capsys):
    code, _, err = call(capsys, "curve", "build", "--family", "g1n2", "--params", "a=1")
    assert code == 2 and "error" in err


def test_coordinates(capsys):
    code, out, _ = call(capsys, "krichever", "coords", *G1N2, "--format", "json")
    entries = {tuple(e[:4]): e[4] for e in json.loads(out)["entries"]}
    assert code == 0
    assert entries[(2, 1, -1, -1)] == "2/1" and entries[(1, 2, -2, 0)] == "3/1"


def test_h0h1_and_forget(capsys):
    code, out, _ = call(capsys, "krichever", "h0h1", *G1N2, "--divisor", "2,0")
    assert code == 0 and out.startswith("h0 = 2, h1 = 0")
    code, out, _ = call(capsys, "krichever", "forget", *G1N2)
    assert code == 0 and out.rstrip().endswith("5, -41")


def test_git_commands(capsys):
    assert call(capsys, "git", "member", "--a", "2,0", "--chi", "-3,3")[1].strip() == "interior"
    assert call(capsys, "git", "member", "--a", "1,1", "--chi", "2,-1")[1].strip() == "boundary"
    assert call(capsys, "git", "cone", "--a", "1,1")[1].split("\n")[:2] == ["2, -1", "-1, 2"]


def test_gaps_commands(capsys):
    assert call(capsys, "gaps", "genus", "--gaps", "1,3")[1].strip() == "2"
    code, out, _ = call(capsys, "gaps", "symmetric", "--gaps", "1,3,5")
    assert code == 0 and out.strip() == "true"
    assert call(capsys, "gaps", "genus", "--gaps", "2")[0] == 2


def test_bad_choice_and_window(capsys):
    assert call(capsys, "gaps", "nope")[0] == 2
    assert call(capsys, "verify", "--suite", "nope")[0] == 2
    assert call(capsys, "verify", "--suite", "gaps", "--window", "3")[0] == 2


def test_forced_shape_failure_exits_one(capsys):
    code, out, _ = call(capsys, "groebner", "shape", "--family", "g1n3",
                        "--params", '{"M": [[1, 2, 3, 4], [0, 1, 0, 2]], "t": 1, "force": true}')
    assert code == 1 and "FAIL" in out


def test_reports_are_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(["verify", "--suite", "gaps", "--format", "json", "-o", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert data["suite"] == "gaps" and data["passed"] is True


def test_window_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("KRICH_WINDOW", "x")
    assert call(capsys, "gaps", "genus", "--gaps", "1")[0] == 2


@pytest.mark.parametrize("entry", [["-m", "krich"]])
def test_module_entry_point(entry):
    proc = subprocess.run([sys.executable, *entry, "gaps", "symmetric", "--gaps", "1,2,3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "false"


def test_h0h1_on_a_curve_without_cell_weights(capsys):
    code, out, _ = call(capsys, "krichever", "h0h1", "--family", "hyperelliptic",
                        "--params", '{"g": 2, "coeffs": [1, 0, 2, 3]}', "--divisor", "3", "--format", "json")
    assert code == 0 and json.loads(out)["h0"] == 2
