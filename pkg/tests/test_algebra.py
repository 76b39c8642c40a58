from __future__ import annotations

from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from symqcs.algebra import (SymAlgebra, corrupt, exterior_algebra, exterior_quotient_map, generator_degrees,
                            is_algebra_morphism, sym_group_algebra, tensor_algebra, trivial_action)
from symqcs.linalg import Field, Matrix
from symqcs.parse import parse_ring
from symqcs.symseq import SymSeqMap


def test_tensor_algebra():
    E = tensor_algebra(2, 4)
    assert E.dims() == [1, 2, 4, 8, 16]
    assert E.check_axioms().ok and E.check_commutative().ok
    assert tensor_algebra(0, 3).dims() == [1, 0, 0, 0]


def test_tensor_naive_commutativity_first_fails_at_one_one():
    r = tensor_algebra(2, 4).check_commutative(naive=True)
    assert r.violations[0] == ("commutativity", 1, 1)


def test_exterior_algebra():
    assert exterior_algebra(1, 4).dims() == [1, 1, 0, 0, 0]
    L = exterior_algebra(3, 4)
    assert L.dims() == [comb(3, n) for n in range(5)]
    assert L.check_axioms().ok and L.check_commutative().ok


def test_exterior_quotient_is_a_morphism():
    T, L = tensor_algebra(2, 4), exterior_algebra(2, 4)
    f = exterior_quotient_map(T, L, 2)
    assert is_algebra_morphism(T, L, f).ok
    bad = SymSeqMap(f.source, f.target, [c.scale(2) if n == 1 else c for n, c in enumerate(f.components)])
    assert not is_algebra_morphism(T, L, bad).ok


def test_sym_group_algebra_dims_and_axioms():
    K = sym_group_algebra(4)
    assert K.dims() == [factorial(n) for n in range(5)]
    assert K.check_axioms().ok


def test_sym_group_algebra_left_action_is_not_chi_commutative():
    # block product with the left regular action: chi (s x t) = (t x s) chi, not t x s
    r = sym_group_algebra(4).check_commutative()
    assert ("commutativity", 1, 1) in r.violations
    assert sym_group_algebra(4, "conjugation").check_commutative().ok
    naive = sym_group_algebra(4).check_commutative(naive=True)
    assert ("commutativity", 1, 1) not in naive.violations
    assert naive.violations[0] == ("commutativity", 1, 2)


def test_trivial_action_rings():
    E = trivial_action(parse_ring("Q[x,y]"), 4)
    assert E.dims() == [1, 2, 3, 4, 5]
    assert E.check_axioms().ok and E.check_commutative().ok and E.check_commutative(naive=True).ok
    F = trivial_action(parse_ring("Q[x]/(x^3)"), 4)
    assert F.dims() == [1, 1, 1, 0, 0]
    assert F.check_axioms().ok
    assert generator_degrees(E) == [1, 1]


def test_cutoff_zero_algebra():
    assert tensor_algebra(2, 0).check_axioms().ok


def _cells_touching(cell, n, m):
    kind = cell[0]
    if kind == "equivariance":
        return tuple(cell[1:]) == (n, m)
    if kind == "associativity":
        a, b, c = cell[1:]
        return (n, m) in {(a + b, c), (a, b), (a, b + c), (b, c)}
    if kind == "unit_left":
        return (n, m) == (0, cell[1])
    if kind == "unit_right":
        return (n, m) == (cell[1], 0)
    return False


@given(st.integers(0, 2), st.integers(0, 2), st.data())
def test_corruption_is_detected_in_touching_cells(n, m, data):
    E = tensor_algebra(2, 4)
    mu = E.mults[(n, m)]
    row = data.draw(st.integers(0, mu.nrows - 1))
    col = data.draw(st.integers(0, mu.ncols - 1))
    bad = corrupt(E, n, m, row, col)
    rpt = bad.check_axioms()
    assert rpt.violations
    assert all(_cells_touching(c, n, m) for c in rpt.violations)


def test_json_round_trip_and_fields():
    E = exterior_algebra(2, 3, Field(5))
    F = SymAlgebra.from_json(E.to_json())
    assert F.dims() == E.dims() and F.field == Field(5)
    assert all(F.mults[k] == E.mults[k] for k in E.mults)


def test_unknown_action_rejected():
    with pytest.raises(ValueError):
        sym_group_algebra(2, "right")


def test_mult_entries_are_exact():
    E = trivial_action(parse_ring("Q[x,y]"), 2)
    assert isinstance(E.mults[(1, 1)], Matrix)
    assert E.mul(1, {0: 1}, 1, {1: 1}) == E.mul(1, {1: 1}, 1, {0: 1})
