import json
import subprocess
import sys

import pytest

from bottlab.cli import main
from bottlab.towers import BottList


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_enumerate_json(capsys):
    code, out = run(capsys, "enumerate", "--list", "1")
    assert code == 0
    data = json.loads(out)
    assert data["o_count"] == 10 and data["k"] == 2
    code, out = run(capsys, "enumerate", "--list", "1;0,1")
    assert json.loads(out)["o_count"] == 34


def test_bb_bounded_flag(capsys):
    code, out = run(capsys, "bb", "--family", "bounded-flag", "--height", "3")
    assert code == 0
    assert json.loads(out) == {"alpha": [1, 1, 0, 0], "beta": [2, 1]}


def test_verify_cp1_power(capsys):
    code, out = run(capsys, "verify", "--family", "cp1-power", "--max-height", "5", "--format", "text")
    assert code == 0
    assert out.strip().endswith("checks passed")
    assert "FAIL" not in out


def test_exit_codes(capsys, tmp_path):
    assert main(["info", "--list", "1;2"]) == 2
    assert main(["info", "--list", "[[1], [2, x]]"]) == 2
    assert main(["info", "--file", str(tmp_path / "missing.txt")]) == 2
    assert main(["chern", "--list", "1", "--omni", "101;00"]) == 2
    assert main(["ko", "--list", "1;0,2"]) == 3
    assert main(["enumerate", "--family", "cp1-power", "--height", "5", "--cap", "4"]) == 4
    assert main(["verify", "--family", "bounded-flag", "--max-height", "2"]) == 1
    capsys.readouterr()


def test_cap_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("BOTTLAB_CAP", "2")
    assert main(["info", "--list", "1;0,1"]) == 4
    capsys.readouterr()


def test_file_source(capsys, tmp_path):
    f = tmp_path / "tower.txt"
    f.write_text("[[1], [0, 1]]\n")
    code, out = run(capsys, "info", "--file", str(f))
    assert code == 0
    data = json.loads(out)
    assert data["list"] == "1;0,1"
    assert BottList.parse(data["list"]) == BottList.parse("[[1],[0,1]]")


@pytest.mark.parametrize(
    "argv",
    [
        ["cohomology", "--list", "2;-1,3"],
        ["ktheory", "--family", "A-family", "--height", "3", "--omni", "010;001"],
        ["ko", "--family", "bounded-flag", "--height", "3"],
        ["ko", "--family", "A-family", "--height", "3", "--unreduced"],
        ["chern", "--list", "1", "--omni", "11;00"],
        ["info", "--family", "big-entry", "--height", "4", "--seed", "7"],
    ],
)
def test_subcommands_are_deterministic(capsys, argv):
    code, first = run(capsys, *argv)
    assert code == 0
    for fmt in ("json", "csv", "text"):
        assert main(argv + ["--format", fmt]) == 0
        a = capsys.readouterr().out
        assert main(argv + ["--format", fmt]) == 0
        assert capsys.readouterr().out == a
    json.loads(first)


def test_jobs_do_not_change_output(capsys):
    argv = ["enumerate", "--list", "1;2,-1;0,3,1"]
    outs = []
    for jobs in ("1", "2", "4"):
        for fmt in ("json", "csv"):
            assert main(argv + ["--jobs", jobs, "--format", fmt]) == 0
            outs.append((fmt, capsys.readouterr().out))
    for fmt in ("json", "csv"):
        assert len({o for f, o in outs if f == fmt}) == 1


def test_csv_classes_table(capsys):
    code, out = run(capsys, "enumerate", "--list", "1", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "delta,epsilon,2,1+1,bounds"
    assert len(lines) == 11
    assert "00,00,4,8,0" in lines


def test_chern_report(capsys):
    code, out = run(capsys, "chern", "--list", "1")
    data = json.loads(out)
    assert data["chern_numbers"] == {"2": 4, "1+1": 8}
    assert data["almost_complex"] and not data["bounds"]


def test_ko_report(capsys):
    code, out = run(capsys, "ko", "--family", "bounded-flag", "--height", "2")
    data = json.loads(out)
    assert data["ko_minus2"] == "Z^2"
    assert [b["element"] for b in data["basis"]] == ["x*d1", "n({};2)_1"]


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "bottlab.cli", "bb", "--list", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["alpha"] == [1, 1, 0]
