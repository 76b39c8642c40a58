from __future__ import annotations

import json

import pytest

from symqcs.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out else None), out


def test_build_algebra(capsys):
    code, data, _ = run(capsys, "build-algebra", "--tensor", "--dim", "2", "--cutoff", "4")
    assert code == 0 and data["report"]["dims"] == [1, 2, 4, 8, 16]


def test_naive_commutativity_exits_2(capsys):
    code, data, _ = run(capsys, "check", "--tensor", "--commutative", "--naive")
    assert code == 2 and not data["ok"]


def test_axioms_pass(capsys):
    code, data, _ = run(capsys, "check", "--ring", "Q[x,y]", "--axioms", "--commutative", "--cutoff", "3")
    assert code == 0 and data["ok"]


def test_proj_laws(capsys):
    code, data, _ = run(capsys, "proj", "laws", "--ring", "Q[x,y]", "--ideals", "x,y,x*y")
    assert code == 0 and data["ok"]


def test_ideal_queries_exit_0(capsys):
    code, data, _ = run(capsys, "ideal", "prime", "--ring", "Q[x,y]", "--gens", "x^2")
    assert code == 0 and data["report"]["verdict"]["prime"] is False
    code, data, _ = run(capsys, "ideal", "closure", "--tensor", "--gens", "x*y", "--cutoff", "3")
    assert code == 0


def test_round_trip_through_file(capsys, tmp_path):
    code, data, _ = run(capsys, "build-algebra", "--ring", "Q[x]/(x^3)", "--cutoff", "4")
    p = tmp_path / "alg.json"
    p.write_text(json.dumps(data))
    code, data, _ = run(capsys, "check", "--axioms", "--input", str(p))
    assert code == 0 and data["ok"]


def test_output_is_deterministic(capsys):
    a = run(capsys, "suite", "4")[2].out
    b = run(capsys, "suite", "4")[2].out
    assert a == b


def test_bad_input_exits_1(capsys):
    code, _, out = run(capsys, "build-algebra", "--ring", "Q[")
    assert code == 1 and json.loads(out.err)["error"]
    code, _, _ = run(capsys, "ideal", "closure", "--tensor", "--gens", "zz")
    assert code == 1
    code, _, _ = run(capsys, "no-such-command")
    assert code == 1
    code, _, _ = run(capsys, "build-algebra", "--tensor", "--cutoff", "-1")
    assert code == 1
    code, _, _ = run(capsys, "check", "--axioms", "--input", "/nonexistent.json")
    assert code == 1


def test_dimension_guard(capsys, monkeypatch):
    monkeypatch.setenv("SYMQCS_MAX_DIM", "10")
    code, _, out = run(capsys, "build-algebra", "--tensor", "--dim", "2", "--cutoff", "4")
    assert code == 1 and "SYMQCS_MAX_DIM" in out.err


def test_guard_predicts_before_building(capsys, monkeypatch):
    monkeypatch.setenv("SYMQCS_MAX_DIM", "100")
    code, _, _ = run(capsys, "build-algebra", "--sym-group", "--cutoff", "9")
    assert code == 1


@pytest.mark.parametrize("argv", [["torsion", "test", "--ring", "Q[x]", "--quotient-tail", "3", "--cutoff", "6"],
                                  ["proj", "sections", "--ring", "Q[x,y]", "--chart", "x"],
                                  ["reconstruct", "uv-identity", "--ring", "Q[x,y]", "--count", "3"]])
def test_other_commands(capsys, argv):
    code, data, _ = run(capsys, *argv)
    assert code == 0 and data["ok"]
