from __future__ import annotations

from hypothesis import given, strategies as st

from symqcs import rep
from symqcs.linalg import QQ, Field, Matrix
from symqcs.perm import Perm, all_perms, identity


def test_action_examples():
    R = rep.regular(2)
    assert R.action_of(identity(2)) == Matrix.identity(2)
    assert R.action_of(Perm((2, 1))).to_dense() == [[0, 1], [1, 0]]


@given(st.integers(1, 4), st.data())
def test_action_is_a_homomorphism(n, data):
    M = rep.regular(n)
    ps = all_perms(n)
    s = ps[data.draw(st.integers(0, len(ps) - 1))]
    t = ps[data.draw(st.integers(0, len(ps) - 1))]
    assert M.action_of(s * t) == M.action_of(s) @ M.action_of(t)


def test_builtin_modules_satisfy_coxeter_relations():
    for n in range(6):
        for M in (rep.trivial(n, 2), rep.sign(n), rep.regular(n) if n <= 4 else rep.sign(n),
                  rep.conjugation(min(n, 4))):
            assert M.check_relations() == []


def test_induce_examples():
    t = rep.trivial(1)
    ind = rep.induce_tensor(t, t)
    assert ind.dim == 2 and ind.same_as(rep.regular(2))
    m = rep.regular(3)
    assert rep.induce_tensor(rep.trivial(0), m).same_as(m)
    three = rep.trivial(2, 3)
    assert rep.induce_tensor(three, rep.trivial(1)).dim == 9


def test_coinvariants_examples():
    assert rep.coinvariants(rep.trivial(3, 2)).dim == 2
    assert rep.coinvariants(rep.regular(2)).dim == 1
    assert rep.coinvariants(rep.sign(2)).dim == 0


def test_coinvariants_of_induced_match_subgroup_coinvariants():
    for a, b in ((rep.sign(2), rep.trivial(1)), (rep.regular(2), rep.sign(2)), (rep.trivial(1, 2), rep.sign(1))):
        ind = rep.induce_tensor(a, b)
        sub = rep.coinvariants(a).dim * rep.coinvariants(b).dim
        assert rep.coinvariants(ind).dim == sub


def test_maschke_examples():
    assert rep.maschke_average(rep.trivial(3)) == Matrix.identity(1)
    P = rep.maschke_average(rep.regular(2))
    half = QQ.div(1, 2)
    assert P.to_dense() == [[half, half], [half, half]]
    assert rep.maschke_average(rep.sign(2)).is_zero()


def test_maschke_idempotent_and_equivariant():
    for M in (rep.regular(3), rep.conjugation(3), rep.induce_tensor(rep.sign(2), rep.trivial(1))):
        P = rep.maschke_average(M)
        assert P @ P == P
        assert all(g @ P == P @ g for g in M.gens)
        assert P.rank() == rep.invariants(M).dim


def test_maschke_refuses_small_characteristic():
    import pytest
    from symqcs.errors import UnsupportedCharacteristic
    with pytest.raises(UnsupportedCharacteristic):
        rep.maschke_average(rep.regular(3, Field(3)))


def test_restriction_keeps_braid_relations():
    for n in range(2, 5):
        assert rep.restrict(rep.regular(n)).check_relations() == []
        assert rep.restrict_tail(rep.regular(n), 1).check_relations() == []
