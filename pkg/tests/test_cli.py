import json
import subprocess
import sys
from pathlib import Path

import pytest

from catkit.cli import main
from catkit.errors import LIMITS

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_tabulate_pointed(capsys):
    code, out, _ = run(capsys, "tabulate", "-i", str(FIX / "pointed.json"), "--max-arity", "3", "-q")
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "tabmonad" and doc["sizes"] == [1, 2, 3, 4]


def test_tabulate_empty(capsys):
    code, out, _ = run(capsys, "tabulate", "-i", str(FIX / "empty.json"), "--max-arity", "2", "-q")
    assert code == 0 and json.loads(out)["sizes"] == [0, 1, 2]


def test_tabulate_monoid_exit_3(capsys):
    code, _, err = run(capsys, "tabulate", "-i", str(FIX / "monoid.json"), "--max-arity", "2",
                       "--term-depth", "6")
    assert code == 3
    assert "not locally finite within bounds" in err


def test_tabulate_output_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "tabulate", "-i", str(FIX / "pointed.json"), "-o", str(target), "-q")
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["sizes"] == [1, 2, 3, 4]


def test_deterministic_bytes(capsys):
    args = ("tabulate", "-i", str(FIX / "semilattice.json"), "--max-arity", "2", "-q")
    first = run(capsys, *args)[1]
    assert run(capsys, *args)[1] == first
    assert first.endswith("\n") and ": " not in first


@pytest.mark.parametrize("fixture", ["identity_tabmonad.json", "identity_theory.json", "chain3_identity_monad.json"])
def test_roundtrip_passes(capsys, fixture):
    code, out, _ = run(capsys, "roundtrip", "-i", str(FIX / fixture), "-q")
    assert code == 0 and json.loads(out)["passed"]


def test_roundtrip_exhaustive(capsys):
    code, out, err = run(capsys, "roundtrip", "--exhaustive-base", "chain2")
    assert code == 0
    assert len(json.loads(out)["monads"]) == 2
    assert "2/2" in err


def test_roundtrip_broken_tupling(capsys):
    code, out, _ = run(capsys, "roundtrip", "-i", str(FIX / "broken_tupling_theory.json"), "-q")
    doc = json.loads(out)
    assert code == 1 and doc["invariant"] == "tupling bijection"


@pytest.mark.parametrize("suite, fixture, extra", [
    ("gamma-int", "parfl_vee.json", []),
    ("gamma-int", "parfl_chain3.json", []),
    ("duality", "companion_diamond_chain2.json", []),
    ("duality", "conjoint_chain2_const_top.json", []),
    ("triangle", "semilattice_tabmonad.json", ["--carrier", "2", "--max-arity", "2"]),
    ("kleisli", "pointed_tabmonad.json", []),
    ("theory", "pointed_tabmonad.json", []),
    ("wcat", "wcat_chain2_const.json", ["--extent-family", "chain2"]),
])
def test_check_suites_pass(capsys, suite, fixture, extra):
    code, out, _ = run(capsys, "check", "--suite", suite, "-i", str(FIX / fixture), "-q", *extra)
    assert code == 0, out
    assert json.loads(out)["passed"]


def test_wrong_kind_is_parse_error(capsys):
    code, _, _ = run(capsys, "tabulate", "-i", str(FIX / "parfl_vee.json"), "-q")
    assert code == 2


def test_malformed_inputs(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "tabulate", "-i", str(bad), "-q")[0] == 2
    assert run(capsys, "tabulate", "-i", str(tmp_path / "missing.json"), "-q")[0] == 2
    bad.write_text(json.dumps({"kind": "presentation", "ops": [{"name": "f", "arity": 1}],
                               "eqs": [{"vars": 1, "lhs": ["f", 0, 0], "rhs": 0}]}))
    assert run(capsys, "tabulate", "-i", str(bad), "-q")[0] == 2


def test_bad_flags(capsys):
    assert run(capsys, "tabulate", "--max-arity", "0")[0] == 2
    assert run(capsys, "check", "--suite", "nope")[0] == 2
    assert run(capsys)[0] == 2


def test_resource_bound(capsys):
    before = LIMITS.max_set_size
    code, _, _ = run(capsys, "tabulate", "-i", str(FIX / "semilattice.json"), "--max-set-size", "3", "-q")
    assert code == 3
    assert LIMITS.max_set_size == before


def test_console_script_env_override(tmp_path):
    env = {"CATKIT_MAX_CANDIDATES": "2", "PATH": "/usr/bin:/bin"}
    proc = subprocess.run([sys.executable, "-m", "catkit.cli", "roundtrip", "--exhaustive-base", "diamond", "-q"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 3
    proc = subprocess.run([sys.executable, "-m", "catkit.cli", "tabulate", "-i", str(FIX / "empty.json"),
                           "--max-arity", "1", "-q"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["sizes"] == [0, 1]
