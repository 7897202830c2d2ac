import json
import pathlib
import shutil
import subprocess

import pytest

from mereology.cli import EXIT_ERROR, EXIT_FALSE, EXIT_RESOURCE, EXIT_TRUE, run
from mereology.demos import DEMOS

GOLDEN = pathlib.Path(__file__).parent / "golden"


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decide_verdicts(capsys):
    assert call(capsys, "decide", "--mode", "set", "E x. A y. (y <= x)") == (EXIT_FALSE, "false\n", "")
    assert call(capsys, "decide", "--mode", "class", "E x. A y. (y <= x)") == (EXIT_TRUE, "true\n", "")


@pytest.mark.parametrize("argv", [
    ["decide", "--mode", "set", "E x. (x <= "],
    ["decide", "--mode", "set", "1 <= 1"],
    ["decide", "--mode", "sets", "0 = 0"],
    ["decide", "x <= 0"],
    ["characteristic", "--model", "nonsense"],
    ["frobnicate"],
])
def test_errors_exit_2(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == EXIT_ERROR
    assert err


def test_resource_cap_exit_3(capsys):
    code, _, err = call(capsys, "qe", "E a. E b. E c. |a \\/ b \\/ c| = 60")
    assert code == EXIT_RESOURCE and "disjuncts" in err


def test_qe_dump(capsys):
    code, out, _ = call(capsys, "qe", "--mode", "set", "E x. (|x /\\ a| = 2 & |a - x| = 3)")
    assert code == EXIT_TRUE
    assert out == "disjunct 0:\n{a} : {5}\n{} : ~{}\n"


def test_equiv(capsys):
    assert call(capsys, "equiv", "a <= b", "a /\\ b = a")[0] == EXIT_TRUE
    assert call(capsys, "equiv", "a <= b", "b <= a")[0] == EXIT_FALSE


def test_type_and_realize(capsys, tmp_path):
    elems = tmp_path / "elems.json"
    elems.write_text(json.dumps({
        "a": {"presentation": "columns", "cols": {"0": {"prefix": [], "t": 0, "p": 1, "r": [0]}}},
        "b": {"presentation": "columns", "cols": {"0": [1, 2, 3], "1": {"t": 0, "p": 2, "r": [1]}}},
    }))
    code, out, _ = call(capsys, "type", "--model", "columns", "--elems", str(elems))
    assert code == EXIT_TRUE
    assert out == "{a} : inf\n{b} : inf\n{a,b} : 3\n{} : inf\n"
    split = tmp_path / "split.json"
    split.write_text(json.dumps({"cells": {"1": ["inf", "inf"], "2": [0, "inf"], "3": [1, 2]}, "exterior": [4]}))
    code, out, _ = call(capsys, "realize", "--model", "columns", "--params", str(elems), "--split", str(split))
    assert code == EXIT_TRUE
    assert json.loads(out)["presentation"] == "columns"
    amorph = tmp_path / "u.json"
    amorph.write_text(json.dumps([{"presentation": "amorphous", "cols": {"0": {"t": 0, "p": 1, "r": [0]}}}]))
    split.write_text(json.dumps({"cells": {"1": ["inf", "inf"]}, "exterior": [0]}))
    code, out, _ = call(capsys, "realize", "--model", "amorphous", "--params", str(amorph), "--split", str(split))
    assert code == EXIT_FALSE and out.startswith("UNREALIZABLE 1")


def test_bad_descriptor_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = call(capsys, "type", "--model", "columns", "--elems", str(bad))
    assert code == EXIT_ERROR and "invalid JSON" in err
    bad.write_text(json.dumps([{"presentation": "prime", "atoms": [1]}]))
    assert call(capsys, "type", "--model", "columns", "--elems", str(bad))[0] == EXIT_ERROR
    assert call(capsys, "type", "--model", "columns", "--elems", str(tmp_path / "missing.json"))[0] == EXIT_ERROR


def test_check_sat(capsys):
    code, out, _ = call(capsys, "check-sat", "--model", "columns")
    assert code == EXIT_TRUE and "verdict: Saturated" in out
    code, out, _ = call(capsys, "check-sat", "--model", "prime")
    assert code == EXIT_FALSE and "evidence: NoInfiniteElements" in out


def test_characteristic(capsys):
    assert call(capsys, "characteristic", "--model", "char3") == (EXIT_TRUE, "3\n", "")
    assert call(capsys, "characteristic", "--model", "prime")[1] == "0\n"
    assert call(capsys, "characteristic", "--model", "columns")[1] == "inf\n"


def test_iso_table(capsys):
    code, out, _ = call(capsys, "iso", "--left", "columns", "--right", "columns-perm", "--steps", "200")
    assert code == EXIT_TRUE
    rows = out.splitlines()
    assert len(rows) == 200
    assert [r.split("\t")[1] for r in rows[:4]] == ["left", "right", "left", "right"]


def test_iso_obstruction(capsys):
    code, out, _ = call(capsys, "iso", "--left", "columns", "--right", "amorphous", "--steps", "50")
    assert code == EXIT_FALSE and out.splitlines()[-1].startswith("OBSTRUCTION")


def test_iso_verify(capsys):
    code, out, _ = call(capsys, "iso", "--left", "char2", "--right", "char2-perm", "--steps", "30", "--verify")
    assert code == EXIT_TRUE and out.splitlines()[-1] == "verified 30 pairs: ok"


def test_oracle_compare(capsys):
    code, out, _ = call(capsys, "oracle-compare", "--mode", "class", "--corpus-size", "15", "--seed", "2")
    assert code == EXIT_TRUE
    assert out.splitlines()[-1] == "agree=15 disagree=0 unstable=0"
    code, out, _ = call(capsys, "oracle-compare", "--corpus-size", "10", "--rungs", "1,1,3;2,1,4;3,2,6")
    assert out.splitlines()[-1].startswith("agree=")


@pytest.mark.parametrize("name", sorted(DEMOS))
def test_demo_golden(capsys, name):
    code, out, _ = call(capsys, "demo", name)
    assert code == EXIT_TRUE
    assert out == (GOLDEN / f"demo-{name}.txt").read_text(encoding="utf-8")


def test_every_demo_has_a_golden_file():
    assert sorted(p.name for p in GOLDEN.glob("demo-*.txt")) == sorted(f"demo-{n}.txt" for n in DEMOS)


def test_runs_are_deterministic(capsys):
    for argv in (["check-sat", "--model", "ba-sat", "--seed", "3"], ["demo", "prime-model"],
                 ["iso", "--left", "ba-sat", "--right", "ba-sat", "--steps", "25"]):
        assert call(capsys, *argv) == call(capsys, *argv)


@pytest.mark.skipif(shutil.which("mereology") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["mereology", "decide", "--mode", "set", "E x. A y. (y <= x)"],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and proc.stdout == "false\n"
