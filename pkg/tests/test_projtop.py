from __future__ import annotations

import pytest

from symqcs.algebra import MonomialRing
from symqcs.errors import ConfigurationError, Unsupported
from symqcs.ideal import sigma_closure
from symqcs.parse import build_algebra, parse_elements, parse_ring
from symqcs.projtop import (PrimeFamily, chart_cocycle, check_spectral_properties, check_topology_laws,
                            monomial_family, projective_space_embedding_check, radical_vs_intersection,
                            sections_commutative, v_set)


def ideal(E, s):
    return sigma_closure(E, parse_elements(E, s))


@pytest.fixture(scope="module")
def plane():
    E = build_algebra("Q[x,y]", 4)
    return E, monomial_family(E)


def test_monomial_family(plane):
    E, fam = plane
    assert [P.name for P in fam.primes] == ["0", "(x)^Sigma", "(y)^Sigma"]


def test_v_sets(plane):
    E, fam = plane
    assert fam.names(v_set(ideal(E, "x"), fam)) == ["(x)^Sigma"]
    assert fam.names(v_set(ideal(E, "x*y"), fam)) == ["(x)^Sigma", "(y)^Sigma"]
    assert v_set(ideal(E, "x+y"), fam) == frozenset()
    fam2 = PrimeFamily(E, [ideal(E, "x"), ideal(E, "y"), ideal(E, "x-y")])
    assert len(fam2) == 3
    assert len(v_set(ideal(E, "x^2*y-x*y^2"), fam2)) == 3


def test_family_rejects_non_primes(plane):
    E, _ = plane
    fam = PrimeFamily(E, [ideal(E, "x^2"), ideal(E, "x,y")])
    assert len(fam) == 0
    assert {r["reason"] for r in fam.rejected} == {"not prime", "contains E_>=1"}


def test_topology_laws(plane):
    E, fam = plane
    ideals = [ideal(E, s) for s in ["x", "y", "x*y", "x^2", "x+y"]]
    r = check_topology_laws(fam, ideals)
    assert r["ok"], r


def test_spectral(plane):
    E, fam = plane
    r = check_spectral_properties(fam, [ideal(E, s) for s in ["x", "y", "x*y"]])
    assert r["ok"], r


def test_duplicate_points_fail_t0(plane):
    E, _ = plane
    fam = PrimeFamily(E, [ideal(E, "x"), ideal(E, "x")], dedupe=False)
    r = check_spectral_properties(fam, [])
    t0 = r["properties"][0]
    assert t0["property"] == "T0" and t0["status"] == "violated"


def test_radical_against_intersection(plane):
    E, fam = plane
    for s in ["x^2", "x^2,x*y", "x^2*y"]:
        assert radical_vs_intersection(ideal(E, s), fam)["equal"]


def test_sections_examples():
    R = parse_ring("Q[x]")
    s = sections_commutative(R, (1,), 3)
    assert s["generators"] == [] and s["dims_by_degree"] == [1, 1, 1, 1]
    P1 = parse_ring("Q[x,y]")
    s = sections_commutative(P1, (1, 0), 4)
    assert s["generators"] == ["y/x"] and s["relations"] == []
    assert s["dims_by_degree"] == [1, 2, 3, 4, 5]


def test_sections_reject_quotients():
    with pytest.raises((ConfigurationError, Unsupported)):
        sections_commutative(parse_ring("Q[x,y]/(x*y)"), (1, 0))


def test_projective_space_embedding():
    r = projective_space_embedding_check(2, 3)
    assert r["quotient_dims"] == [1, 2, 3, 4] and r["status"] == "verified"
    r = projective_space_embedding_check(1, 3)
    assert r["ideal_dims"] == [0, 0, 0, 0] and r["status"] == "verified"


@pytest.mark.parametrize("n", [2, 3])
def test_chart_cocycle(n):
    R = MonomialRing([f"x{i}" for i in range(n)], [1] * n, [])
    charts = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    assert chart_cocycle(R, charts, 3).ok
