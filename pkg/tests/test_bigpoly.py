from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import bipolys, ratios
from theta_cert.bigpoly import (
    BiPoly,
    UniPoly,
    X,
    Y,
    Zmod,
    as_poly_in,
    from_poly_in,
    partial_derivative,
    poly_add,
    poly_eval,
    poly_mul,
    substitute_power,
)
from theta_cert.modular_tables import get_poly

P2 = 2 * X - Y**2 - 1
P4 = 4 * X - (1 + Y) ** 2


def test_bigint_decimal_roundtrip():
    n = -(10**80) + 12345
    assert int(str(n)) == n
    assert BiPoly({(0, 0): 0}).is_zero
    assert BiPoly({(0, 0): 0}) == BiPoly({})


def test_add_examples():
    assert (X + Y) + (X - Y) == 2 * X
    assert P2 + BiPoly() == P2
    assert poly_add(P2, P4) == 6 * X - 2 * Y**2 - 2 * Y - 2


def test_mul_examples():
    assert poly_mul(X + Y, X - Y) == X**2 - Y**2
    assert P2 * 1 == P2


def test_mul_degree_eight_oracle():
    # 9Y(5Y-512)(Y-16)^2(Y-8)^4 expanded once; checked against the factored
    # form by plain integer arithmetic at several points.
    frozen = [0, -4831838208, 3067084800, -803340288, 111366144, -8681472, 369792, -7488, 45]
    prod = 9 * Y * (5 * Y - 512) * (Y - 16) ** 2 * (Y - 8) ** 4
    assert prod == BiPoly({(0, j): c for j, c in enumerate(frozen)})
    for y in (-3, 1, 2, 7, 100):
        assert sum(c * y**j for j, c in enumerate(frozen)) == 9 * y * (5 * y - 512) * (y - 16) ** 2 * (y - 8) ** 4
    assert poly_eval(prod, 0, 1) == -2465046675


def test_eval_examples(p3):
    assert poly_eval(p3, 1, 0) == 0
    assert poly_eval(p3, 0, 0) == 9
    p8 = get_poly("pow2", 8).poly
    assert poly_eval(p8, Fraction(1, 8), Fraction(0)) == 0


def test_eval_mod_p(p3):
    assert poly_eval(p3, Zmod(3, 7), Zmod(5, 7)) == Zmod(poly_eval(p3, 3, 5), 7)


def test_partial_derivative_examples(p3):
    assert partial_derivative(P2, "Y") == -2 * Y
    assert partial_derivative(p3, "Y") == (-2 * Y + 16) * X
    p16 = get_poly("pow2", 16).poly
    assert poly_eval(partial_derivative(p16, "Y"), Fraction(1, 16), Fraction(0)) == -128
    with pytest.raises(ValueError):
        partial_derivative(P2, "Z")


def test_substitute_power_examples():
    assert substitute_power(P2, 2, 2) == 2 * X**2 - Y**4 - 1
    assert substitute_power(P4, 1, 1) == P4
    assert substitute_power(get_poly("odd", 7).poly, 2, 2).deg_x == 16
    with pytest.raises(ValueError):
        substitute_power(P2, 0, 1)


def test_as_poly_in_examples():
    assert as_poly_in(P2, "Y") == [UniPoly((-1, 2), "X"), UniPoly((), "X"), UniPoly((-1,), "X")]
    assert as_poly_in(BiPoly(), "Y") == []
    assert as_poly_in(P4, "Y") == [UniPoly((-1, 4), "X"), UniPoly((-2,), "X"), UniPoly((-1,), "X")]


def test_cached_degrees():
    p = 3 * X**5 * Y + Y**7 - 2
    assert (p.deg_x, p.deg_y, p.total_degree) == (5, 7, 7)
    assert (BiPoly().deg_x, BiPoly().deg_y) == (-1, -1)
    assert list(p.terms) == sorted(p.terms)


@given(bipolys(), bipolys(), bipolys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(bipolys(), bipolys(), ratios, ratios)
def test_eval_is_ring_homomorphism(a, b, x, y):
    assert poly_eval(a * b, x, y) == poly_eval(a, x, y) * poly_eval(b, x, y)
    assert poly_eval(a + b, x, y) == poly_eval(a, x, y) + poly_eval(b, x, y)


@given(bipolys(), bipolys(), st.integers(-20, 20), st.integers(-20, 20), st.sampled_from([2, 3, 13]))
def test_eval_homomorphism_mod_p(a, b, x, y, p):
    xm, ym = Zmod(x, p), Zmod(y, p)
    assert poly_eval(a * b, xm, ym) == poly_eval(a, xm, ym) * poly_eval(b, xm, ym)


@given(bipolys(), st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
def test_substitute_power_composes(p, a, b, c, d):
    assert substitute_power(substitute_power(p, a, b), c, d) == substitute_power(p, a * c, b * d)


@given(bipolys())
def test_poly_in_reassembles(p):
    assert from_poly_in(as_poly_in(p, "Y"), "Y") == p
    assert from_poly_in(as_poly_in(p, "X"), "X") == p


@settings(max_examples=50)
@given(bipolys(), bipolys(), st.sampled_from(["X", "Y"]))
def test_derivative_linear_and_leibniz(a, b, v):
    d = lambda p: partial_derivative(p, v)
    assert d(a + b) == d(a) + d(b)
    assert d(a * b) == d(a) * b + a * d(b)
