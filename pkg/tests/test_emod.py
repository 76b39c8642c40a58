from __future__ import annotations

from math import factorial

import pytest
from hypothesis import given, strategies as st

from symqcs.algebra import exterior_algebra, sym_group_algebra, tensor_algebra, trivial_action
from symqcs.emod.adjunction import (a_map, a_map_cokernel, lemma_vu_smash, random_presentation,
                                    random_suspension_presentation, suspension, trivial_symmetric, uv_identity,
                                    v_of_free)
from symqcs.emod.core import (EModule, EModuleMap, algebra_as_module, direct_sum, free_module, shift)
from symqcs.emod.flat import random_monomorphism, smash_preserves_injectivity
from symqcs.emod.graded import (GradedModule, GradedPresentation, adjunction_triangle, algebra_graded,
                                graded_closure, graded_quotient, is_tors_closed, is_torsion, l_filtration,
                                max_annihilation, present, quotient_by_tail, u_functor, v_functor)
from symqcs.emod.hom import evaluation_iso, internal_hom
from symqcs.emod.smash import free_smash_iso, smash_over_E
from symqcs.errors import Unsupported
from symqcs.linalg import Matrix
from symqcs.parse import parse_ring


def ring(spec, cutoff):
    return trivial_action(parse_ring(spec), cutoff)


def test_free_module_dims():
    T = tensor_algebra(2, 4)
    assert free_module(T, 0).dims() == T.dims()
    F1 = free_module(T, 1)
    assert F1.dim(2) == 4
    for n in range(5):
        for m in range(n + 1):
            assert free_module(T, m).dim(n) == factorial(n) // factorial(n - m) * T.dim(n - m)
    K = sym_group_algebra(4)
    assert [free_module(K, 1).dim(n) for n in range(1, 5)] == [factorial(n) for n in range(1, 5)]


@pytest.mark.parametrize("make", [lambda: tensor_algebra(2, 4), lambda: sym_group_algebra(4),
                                  lambda: ring("Q[x,y]", 4), lambda: exterior_algebra(2, 4)])
def test_free_and_shifted_modules_pass_axioms(make):
    E = make()
    for m in range(3):
        F = free_module(E, m)
        assert F.check_axioms().ok
        assert shift(F, 1).check_axioms().ok


def test_shift_examples():
    T = tensor_algebra(2, 4)
    F1 = free_module(T, 1)
    assert shift(F1, 0).dims() == F1.dims()
    assert shift(F1, 1).dims() == F1.dims()[1:]
    a, b = shift(shift(F1, 1), 1), shift(F1, 2)
    assert a.dims() == b.dims() and all(a.actions[k] == b.actions[k] for k in a.actions)
    assert all(x.same_as(y) for x, y in zip(a.underlying.levels, b.underlying.levels))


def test_corrupted_action_is_detected():
    T = tensor_algebra(2, 3)
    F = free_module(T, 1)
    acts = dict(F.actions)
    a = acts[(1, 1)]
    rows = [dict(r) for r in a.rows]
    rows[0][0] = rows[0].get(0, 0) + 1
    acts[(1, 1)] = Matrix(a.nrows, a.ncols, rows)
    assert not EModule(T, F.underlying, acts).check_axioms().ok


def test_smash_unit_law():
    T = tensor_algebra(2, 3)
    M = free_module(T, 1)
    S = smash_over_E(algebra_as_module(T), M)
    assert S.dims() == M.dims()


@pytest.mark.parametrize("make", [lambda: tensor_algebra(2, 4), lambda: ring("Q[x,y]", 4),
                                  lambda: sym_group_algebra(4, "conjugation")])
def test_free_smash_free(make):
    E = make()
    for m, n in [(1, 1), (0, 2), (2, 1), (1, 3), (2, 2)]:
        S = smash_over_E(free_module(E, m), free_module(E, n))
        f = free_smash_iso(free_module(E, m + n), S, m, n)
        assert f.check().ok and f.is_iso()


@pytest.mark.parametrize("make", [lambda: tensor_algebra(2, 4), lambda: sym_group_algebra(4),
                                  lambda: ring("Q[x,y]", 4)])
def test_hom_from_free_is_shift(make):
    E = make()
    M = direct_sum([algebra_as_module(E), free_module(E, 1)])
    for m in range(3):
        H = internal_hom(free_module(E, m), M)
        assert H.check_axioms().ok
        f = evaluation_iso(H, M, m)
        assert f.check().ok and f.is_iso()


def test_hom_from_E_is_identity_sized():
    T = tensor_algebra(2, 3)
    M = free_module(T, 1)
    H = internal_hom(algebra_as_module(T), M)
    assert H.dims() == M.dims()


def test_hom_from_bounded_module_into_E_vanishes_where_visible():
    A = ring("Q[x]", 4)
    levels = [1, 0, 0, 0, 0]
    mult = {(n, m): (Matrix.identity(levels[n]) if m == 0 else Matrix.zeros(levels[n + m], levels[n] * A.dim(m)))
            for n in range(5) for m in range(5 - n)}
    M = trivial_symmetric(GradedModule(A, levels, mult))
    H = internal_hom(M, algebra_as_module(A))
    # level k only sees the relation m . x = 0 when k + 1 <= cutoff
    assert H.dims()[:4] == [0, 0, 0, 0]
    assert H.meta["valid_for_levels"][4] == 0


@pytest.mark.parametrize("make", [lambda: tensor_algebra(2, 4), lambda: ring("Q[x,y]", 4),
                                  lambda: exterior_algebra(2, 4), lambda: sym_group_algebra(4, "conjugation")])
@given(seed=st.integers(0, 10 ** 6))
def test_flatness(make, seed):
    E = make()
    f = random_monomorphism(E, seed)
    assert f.check().ok and f.is_injective()
    assert smash_preserves_injectivity(f, 2).ok


def test_v_of_free_and_zero_relations():
    E = ring("Q[x,y]", 4)
    assert all(v_of_free(E, n) for n in range(5))
    V, _ = v_functor(GradedPresentation(E, [0, 1], [], 4))
    assert V.dims() == direct_sum([free_module(E, 0), free_module(E, 1)]).dims()


def test_u_functor_keeps_dims():
    T = tensor_algebra(2, 4)
    M = free_module(T, 2)
    assert u_functor(M).dims == M.dims()
    assert u_functor(algebra_as_module(T)).same_as(algebra_graded(T))


@given(seed=st.integers(0, 10 ** 6))
def test_uv_identity_on_suspensions(seed):
    E = ring("Q[x,y]", 4)
    assert uv_identity(random_suspension_presentation(E, seed)).ok


def test_suspension_examples():
    T = tensor_algebra(2, 3)
    assert suspension(T, 1).dims() == T.dims()
    assert suspension(T, 2).dim(1) == 4
    with pytest.raises(Unsupported):
        suspension(T, 2, degree=1)


@pytest.mark.parametrize("degree", [0, 1, 2])
def test_vu_smash_for_suspensions(degree):
    E = ring("Q[x,y]", 4)
    M = suspension(E, 2, degree, [(1, {0: 1, 3: -1})])
    assert lemma_vu_smash(M, degree).ok


def test_adjunction_triangle():
    for E in (tensor_algebra(2, 3), sym_group_algebra(3), ring("Q[x,y]", 3)):
        assert adjunction_triangle(free_module(E, 1)).ok


def test_a_maps():
    A = ring("Q[x]", 4)
    f0 = a_map(A, 0)
    assert f0.relations_respected and f0.is_iso()
    C = a_map_cokernel(A, 1)
    assert C.dims == [1, 0, 0, 0]
    B = ring("Q[x,y]", 7)
    for n in range(4):
        v = is_torsion(a_map_cokernel(B, n))
        assert v["torsion"] and (max_annihilation(v) or 0) <= n


def test_torsion_examples():
    A = ring("Q[x]", 8)
    for n in range(1, 5):
        v = is_torsion(quotient_by_tail(A, n))
        assert v["torsion"] and max_annihilation(v) <= n
    v = is_torsion(algebra_graded(A))
    assert not v["torsion"]
    assert v["pieces"][0]["verdict"].startswith("not annihilated")


def test_tors_closed_examples():
    A = ring("Q[x]", 8)
    assert is_tors_closed(algebra_graded(A), 4)["closed"]
    G = algebra_graded(A)
    Q, _ = graded_quotient(G, graded_closure(G, {1: [{0: 1}]}))
    v = is_tors_closed(Q, 4)
    assert not v["closed"] and [1, 0] in v["failures"]
    zero = GradedModule(A, [0] * 9, {(n, m): Matrix.zeros(0, 0) for n in range(9) for m in range(9 - n)})
    assert is_tors_closed(zero, 4)["closed"]
    assert is_tors_closed(G.shift(1), 4)["closed"]


@given(seed=st.integers(0, 10 ** 6))
def test_presentations_round_trip(seed):
    E = ring("Q[x,y]", 4)
    G = random_presentation(E, seed).cokernel()
    assert G.check_axioms().ok
    P = present(G).cokernel()
    assert P.dims == G.dims
    assert l_filtration(G).ok


def test_graded_json_round_trip():
    E = ring("Q[x,y]", 3)
    G = quotient_by_tail(E, 2)
    assert GradedModule.from_json(G.to_json(), E).same_as(G)


def test_module_json_round_trip():
    T = tensor_algebra(2, 3)
    F = free_module(T, 1)
    G = EModule.from_json(F.to_json(), T)
    assert G.dims() == F.dims() and all(G.actions[k] == F.actions[k] for k in F.actions)
    assert EModuleMap.identity(G).is_iso()
