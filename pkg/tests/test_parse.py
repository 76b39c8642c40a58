from __future__ import annotations

import pytest

from symqcs.errors import ConfigurationError
from symqcs.parse import build_algebra, parse_element, parse_field, parse_ring


def test_ring_specs():
    R = parse_ring("Q[x,y]/(x^3, x*y)")
    assert R.names == ["x", "y"] and R.degrees == [1, 1]
    R = parse_ring("GF(5)[x:2,y]")
    assert R.degrees == [2, 1] and R.field.char == 5


@pytest.mark.parametrize("bad", ["Q[]", "R[x]", "Q[x]/(z)", "Q[1x]", "GF(6)[x]"])
def test_bad_ring_specs(bad):
    with pytest.raises(ConfigurationError):
        parse_ring(bad)


def test_builders_dims():
    assert build_algebra("T(2)", 4).dims() == [1, 2, 4, 8, 16]
    assert build_algebra("Lambda(3)", 4).dims() == [1, 3, 3, 1, 0]
    assert build_algebra("kSigma", 4).dims() == [1, 1, 2, 6, 24]
    assert build_algebra("Q[x,y]/(x^2)", 3).dims() == [1, 2, 2, 2]


def test_elements():
    T = build_algebra("T(2)", 3)
    d, v = parse_element(T, "x*y - y*x")
    assert d == 2 and len(v) == 2
    assert parse_element(T, "2*x^2")[0] == 2
    d, v = parse_element(T, "x - x")
    assert d == 1 and v == {}
    with pytest.raises(ConfigurationError):
        parse_element(T, "x + x*y")
    with pytest.raises(ConfigurationError):
        parse_element(T, "x^4")
    with pytest.raises(ConfigurationError):
        parse_element(T, "z")


def test_fields():
    assert parse_field(None).char == 0
    assert parse_field("GF(7)").char == 7
    with pytest.raises(ConfigurationError):
        parse_field("GF(9)")
