from __future__ import annotations

from hypothesis import given, strategies as st
import numpy as np

from symqcs.algebra import tensor_algebra, sym_group_algebra
from symqcs.ideal import (SigmaIdeal, ideal_sum, intersection, is_finitely_sigma_generated, is_prime_up_to,
                          is_two_sided, positive_ideal, product, radical_up_to, right_ideal, sigma_closure,
                          unit_ideal, zero_ideal)
from symqcs.parse import build_algebra, parse_element, parse_elements


def ideal(E, s):
    return sigma_closure(E, parse_elements(E, s))


def test_closure_of_x_in_polynomial_ring():
    A = build_algebra("Q[x]", 3)
    assert ideal(A, "x").dims() == [0, 1, 1, 1]
    B = build_algebra("Q[x,y]", 3)
    assert ideal(B, "x").dims() == [0, 1, 2, 3]


def test_closure_of_a_tensor_is_symmetrised():
    T = build_algebra("T(2)", 3)
    I = ideal(T, "x*y")
    assert I.dims()[2] == 2
    assert I.contains(*parse_element(T, "y*x"))
    assert not right_ideal(T, parse_elements(T, "x*y")).contains(*parse_element(T, "y*x"))


def test_sigma_closure_of_degree_one_unit_in_kSigma_is_positive_part():
    K = build_algebra("kSigma", 4)
    assert ideal(K, "1") == positive_ideal(K)


def test_product_examples():
    T = build_algebra("T(2)", 4)
    I, J = ideal(T, "x"), ideal(T, "y")
    assert product(I, unit_ideal(T)) == I
    assert product(I, J) <= intersection(I, J)
    assert product(I, J) == ideal(T, "x*y")
    assert product(I, zero_ideal(T)) == zero_ideal(T)


def test_two_sided():
    T = build_algebra("T(2)", 3)
    assert is_two_sided(ideal(T, "x")).ok
    naive = right_ideal(T, parse_elements(T, "x"))
    r = is_two_sided(naive)
    assert not r.ok and r.details["witnesses"]


def test_primes():
    A = build_algebra("Q[x,y]", 4)
    assert is_prime_up_to(ideal(A, "x"))["prime"]
    assert not is_prime_up_to(ideal(A, "x^2"))["prime"]
    assert is_prime_up_to(positive_ideal(A))["prime"]
    T = build_algebra("T(2)", 4)
    v = is_prime_up_to(ideal(T, "x^2"))
    assert not v["prime"] and v["witness"]["x_degree"] == 1


def test_zero_ideal_of_kSigma_reads_as_prime_up_to_cutoff():
    # no degree pair with a zero product exists up to cutoff 4 in the searched classes
    K = build_algebra("kSigma", 4)
    v = is_prime_up_to(zero_ideal(K))
    assert v["prime"] and v["status"].startswith("prime up to cutoff 4")


def test_radical_of_square():
    A = build_algebra("Q[x]", 6)
    assert radical_up_to(ideal(A, "x^2")) == ideal(A, "x")
    B = build_algebra("Q[x,y]", 4)
    assert radical_up_to(ideal(B, "x^2,x*y")) == ideal(B, "x")


def test_finite_sigma_generation():
    T = build_algebra("T(2)", 4)
    assert is_finitely_sigma_generated(T, parse_elements(T, "x,y"))["generated"]
    v = is_finitely_sigma_generated(T, parse_elements(T, "x"))
    assert not v["generated"] and v["first_missing_degree"] == 1
    K = build_algebra("kSigma", 4)
    assert is_finitely_sigma_generated(K, parse_elements(K, "1"))["generated"]


def test_json_round_trip():
    T = build_algebra("T(2)", 3)
    I = ideal(T, "x*y-y*x")
    assert SigmaIdeal.from_json(I.to_json(), T) == I


def _random_gens(E, seed, count):
    rng = np.random.Generator(np.random.Philox(seed))
    out = []
    for _ in range(count):
        d = int(rng.integers(1, E.cutoff + 1))
        v = {i: int(c) for i, c in enumerate(rng.integers(-2, 3, size=E.dim(d))) if c}
        out.append((d, v or {0: 1}))
    return out


@given(seed=st.integers(0, 10 ** 6))
def test_closure_operator_laws(seed):
    E = tensor_algebra(2, 3)
    g1, g2 = _random_gens(E, seed, 2), _random_gens(E, seed + 1, 1)
    I = sigma_closure(E, g1)
    assert all(I.contains(d, v) for d, v in g1)
    assert sigma_closure(E, [(n, v) for n in range(4) for v in I[n].basis()]) == I
    assert I <= sigma_closure(E, g1 + g2)
    assert I.is_stable().ok and is_two_sided(I).ok
    J = sigma_closure(E, g2)
    assert product(I, J) <= intersection(I, J)
    assert ideal_sum([I, J]) == sigma_closure(E, g1 + g2)


@given(seed=st.integers(0, 10 ** 6))
def test_closure_stable_in_kSigma(seed):
    K = sym_group_algebra(3)
    I = sigma_closure(K, _random_gens(K, seed, 1))
    assert I.is_stable().ok
