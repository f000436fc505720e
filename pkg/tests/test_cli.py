import json

import pytest

from pqdigraphs.cli import main, ms_main
from pqdigraphs.digraph import Digraph
from pqdigraphs.ms import MSParams, ms_digraph


def test_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "m23@253" in out and "ms-s8" in out and "[stretch]" in out


def test_run_single_passing_case(capsys):
    assert main(["run", "--case", "wreath-order-15", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [c["id"] for c in data["cases"]] == ["wreath-order-15"]
    assert data["exit_code"] == 0


def test_run_failing_case_exits_one(capsys):
    assert main(["run", "--case", "ms-s4-q3", "--format", "csv"]) == 1
    captured = capsys.readouterr()
    assert captured.out.startswith("case,status,check")
    assert "FAIL ms-s4-q3" in captured.err


def test_glob_and_out(tmp_path, capsys):
    out = tmp_path / "r.md"
    assert main(["run", "--case", "metacirculant-1*", "--out", str(out), "--timings"]) == 0
    text = out.read_text()
    assert "metacirculant-15" in text and "Seconds" in text
    assert capsys.readouterr().out == ""


def test_empty_glob_is_header_only(capsys):
    assert main(["run", "--case", "nothing-*", "--format", "csv"]) == 0
    assert capsys.readouterr().out == "case,status,check,expected,computed,source,anchor,passed\n"


def test_stretch_flag(capsys):
    assert main(["run", "--case", "ms-s8"]) == 0
    assert "skipped (stretch)" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["run", "--case", "no-such-case"],
    ["run", "--format", "yaml"],
    ["frobnicate"],
    ["ms", "build", "--s", "4", "--q", "7", "--T", "0"],
    ["ms", "build", "--s", "4", "--q", "5", "--S", "0", "--T", "0"],
    ["ms", "build", "--s", "4", "--q", "5", "--S", "all", "--T", "0"],
    ["ms", "iso", "--s", "4", "--q", "5", "--T", "none", "--T2", "0"],
])
def test_config_errors_exit_two(argv, capsys):
    assert main(argv) == 2


def test_build_error_exits_two(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CENSUS_DATA_DIR", str(tmp_path))
    assert main(["run", "--case", "m23@253"]) == 2
    assert "ERROR m23@253" in capsys.readouterr().err


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0


def test_ms_build(tmp_path, capsys):
    assert ms_main(["build", "--s", "4", "--q", "5", "--S", "1,4", "--T", "0,2"]) == 0
    g = Digraph.from_text(capsys.readouterr().out)
    assert g == ms_digraph(MSParams(4, 5, {1, 4}, {0, 2}))
    out = tmp_path / "x.dg"
    assert main(["ms", "build", "--s", "2", "--q", "3", "--T", "all", "--out", str(out)]) == 0
    assert Digraph.read(out).valency() == 12


def test_ms_iso(capsys):
    assert ms_main(["iso", "--s", "4", "--q", "5", "--T", "0", "--T2", "3"]) == 0
    assert " ~ " in capsys.readouterr().out
    assert ms_main(["iso", "--s", "4", "--q", "5", "--T", "0", "--T2", "0,1"]) == 0
    assert "not isomorphic" in capsys.readouterr().out


def test_ms_aut(capsys):
    assert ms_main(["aut", "--s", "4", "--q", "5", "--T", "0"]) == 0
    assert "|Aut| = 16320" in capsys.readouterr().out
    assert ms_main(["aut", "--s", "2", "--q", "3", "--S", "1,2", "--T", "1"]) == 0
    assert "|Aut| = 720" in capsys.readouterr().out
