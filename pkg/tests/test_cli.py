import json
import subprocess
import sys
from pathlib import Path

import pytest

from wildquot.cli import InputError, main, parse_mu

GOLDEN = Path(__file__).parent / "golden"


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


def test_parse_mu():
    assert parse_mu("1,7,3,5", 5, 1) == (1, 2, 3, 0)
    assert parse_mu("1,7", 3, 1) == (1, 1)
    assert parse_mu(None, 2, 2) == (0, 0, 0)
    assert parse_mu("1,1:0:0,1", 2, 2) == (3, 0, 2)
    with pytest.raises(InputError):
        parse_mu("1", 3, 1)
    with pytest.raises(InputError):
        parse_mu("1,1,1:0:0", 2, 2)
    with pytest.raises(InputError):
        parse_mu("x,1", 3, 1)


def test_invariants_example(capsys):
    code, data = run(["--p", "3", "--s", "1", "--mu", "0,0", "--mu-prime", "0,0", "invariants"], capsys)
    assert code == 0
    inv = data["invariants"]
    assert (inv["e_Stilde"], inv["K_Stilde_sq"], inv["chi"]) == (9, 3, 1)


def test_graph_example(capsys):
    code, data = run(["--p", "2", "--s", "1", "--mu", "0", "--mu-prime", "0", "graph"], capsys)
    assert code == 0
    g = data["graph"]
    assert g["Z_sq"] == -2 and g["p_f"] == 0 and len(g["star_graph"]["vertices"]) == 4


def test_embed_example(capsys):
    code, data = run(["--p", "5", "--mu", "0,0,0,0", "--mu-prime", "0,0,0,0", "embed"], capsys)
    assert code == 0
    e = data["embed"]
    assert e["model"]["degree"] == 5
    assert e["validation"]["monomial_count"] == 56 and e["validation"]["nullity_degree_q"] == 1


@pytest.mark.parametrize("cmd", ["curve", "quotient", "modrep", "all"])
def test_other_commands(cmd, capsys):
    code, data = run(["--p", "3", "--mu", "1,2", "--mu-prime", "2,0", cmd], capsys)
    assert code == 0 and data["ok"] and data["failures"] == []


def test_extension_field_input(capsys):
    code, data = run(["--p", "2", "--s", "2", "--mu", "1,1:0:1", "all"], capsys)
    assert code == 0 and data["q"] == 4


@pytest.mark.parametrize("argv", [["--p", "4", "curve"], ["--p", "3", "--mu", "1", "curve"],
                                  ["--p", "3", "bogus"], ["--p", "3", "--N", "2", "curve"], ["--p", "2", "--s", "9", "curve"]])
def test_bad_input_exit_code(argv, capsys):
    assert main(argv) == 1


def test_failure_exit_code(monkeypatch, capsys):
    import wildquot.cli as cli

    monkeypatch.setattr(cli, "swap_identity_holds", lambda eq: False)
    code, data = run(["--p", "3", "quotient"], capsys)
    assert code == 2
    assert data["failures"] == [{"check": "swap symmetry"}]


@pytest.mark.parametrize("p,s,q", [(2, 1, 2), (3, 1, 3), (2, 2, 4), (5, 1, 5)])
def test_golden_reports(p, s, q, tmp_path):
    out = tmp_path / "r.json"
    assert main(["--p", str(p), "--s", str(s), "invariants", "--out", str(out)]) == 0
    assert out.read_text() == (GOLDEN / f"invariants_q{q}.json").read_text()


def test_determinism_across_processes():
    argv = [sys.executable, "-m", "wildquot", "--p", "3", "--mu", "1,2", "--seed", "4", "all"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["ok"]
