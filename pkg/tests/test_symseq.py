from __future__ import annotations

from itertools import product
from math import comb

from hypothesis import given, strategies as st

from symqcs import rep
from symqcs.linalg import QQ, Matrix
from symqcs.perm import Perm, identity
from symqcs.symseq import (SymSeq, SymSeqMap, associator, cokernel, day_tensor, hexagon_maps, kernel,
                           representable, representable_product_iso, seq_direct_sum, twist, unit, zero_seq)

C = 4


def sign_seq(c=C):
    return SymSeq([rep.sign(n) for n in range(c + 1)])


def trivial_seq(dims):
    return SymSeq([rep.trivial(n, d) for n, d in enumerate(dims)])


def convolution_oracle(dm, dn, t):
    # induced dimension from Sigma_p x Sigma_q: index C(t, p) times dim of the tensor factor
    total = 0
    for p in range(t + 1):
        total += comb(t, p) * dm[p] * dn[t - p]
    return total


def test_f1_smash_f1_level_two():
    D = day_tensor(representable(1, C), representable(1, C))
    assert D.dim(2) == 2


def test_dimension_example_by_hand():
    D = day_tensor(trivial_seq([1, 2, 0, 1]), trivial_seq([1, 1, 1, 1]))
    assert D.dim(2) == 5


@given(st.lists(st.integers(0, 2), min_size=4, max_size=4), st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_dimension_formula(a, b):
    D = day_tensor(trivial_seq(a), trivial_seq(b))
    assert D.dims() == [convolution_oracle(a, b, t) for t in range(4)]
    for lv in D.levels:
        assert lv.check_relations() == []


def test_unit_tensor_has_same_levels():
    X = seq_direct_sum([representable(1, C), sign_seq()])
    assert day_tensor(unit(C), X).dims() == X.dims()
    assert day_tensor(X, unit(C)).dims() == X.dims()


def test_twist_involution_and_example():
    F1 = representable(1, C)
    D = day_tensor(F1, F1)
    tw = twist(D, D)
    assert tw.is_equivariant()
    assert tw @ tw == SymSeqMap.identity(D)
    # the identity-coset basis vector goes to the chi_{1,1}-coset one
    e_id = D.element(1, identity(2), {0: 1}, {0: 1})
    e_chi = D.element(1, Perm((2, 1)), {0: 1}, {0: 1})
    assert tw[2].apply(e_id) == e_chi


def test_naive_swap_is_detected():
    X, Y = representable(1, C), representable(2, C)
    naive = twist(day_tensor(X, Y), day_tensor(Y, X), naive=True)
    assert naive.equivariance_failures()
    assert twist(day_tensor(X, Y), day_tensor(Y, X)).is_equivariant()


def test_kernel_and_cokernel():
    X = seq_direct_sum([representable(1, C), sign_seq()])
    k, _ = kernel(SymSeqMap.identity(X))
    assert k.dims() == [0] * (C + 1)
    q, _ = cokernel(SymSeqMap.zero(zero_seq(C), X))
    assert q.same_as(X)


def test_rank_nullity_per_level():
    D = day_tensor(representable(1, C), representable(1, C))
    tw = twist(D, D)
    f = SymSeqMap(D, D, [tw[n] + Matrix.identity(D.dim(n)) for n in range(C + 1)])
    k, _ = kernel(f)
    for n in range(C + 1):
        assert k.dim(n) + f[n].rank() == D.dim(n)


def test_associator_and_hexagon():
    seqs = [representable(1, C), representable(2, C), sign_seq()]
    for a, b, c in product(seqs, repeat=3):
        ab_c, a_bc = day_tensor(day_tensor(a, b), c), day_tensor(a, day_tensor(b, c))
        assert ab_c.dims() == a_bc.dims()
        m = associator(ab_c, a_bc)
        assert m.is_equivariant() and m.is_iso()
    for a, b, c in [(seqs[0], seqs[1], seqs[2]), (seqs[2], seqs[0], seqs[0])]:
        direct, composite = hexagon_maps(a, b, c)
        assert direct == composite


def test_representables_multiply():
    for m in range(6):
        for n in range(6 - m):
            f = representable_product_iso(day_tensor(representable(m, 5), representable(n, 5)),
                                          representable(m + n, 5), m, n)
            assert f.is_equivariant() and f.is_iso()


def test_json_round_trip():
    X = seq_direct_sum([representable(2, 3), sign_seq(3)])
    assert SymSeq.from_json(X.to_json(), QQ).same_as(X)
