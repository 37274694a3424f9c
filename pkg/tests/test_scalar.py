from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from hopfact.scalar import (
    ConductorLimitExceeded,
    DivisionByZero,
    Scalar,
    cyclotomic_polynomial,
    fdiv,
    order_of_root,
    parse_scalar,
    primitive_root,
    render_scalar,
    root_of_unity,
    scalar_from_rational,
    simplify,
    to_scalar,
    totient,
)

CONDUCTORS = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12]

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def scalars(draw, conductor=None):
    n = draw(st.sampled_from(CONDUCTORS)) if conductor is None else conductor
    coeffs = draw(st.lists(rationals, min_size=totient(n), max_size=totient(n)))
    return Scalar(n, coeffs)


@st.composite
def scalar_triples(draw):
    n = draw(st.sampled_from(CONDUCTORS))
    return draw(scalars(n)), draw(scalars(n)), draw(scalars(n))


def test_rational_embedding_is_reduced():
    s = scalar_from_rational(Fraction(6, -4))
    assert s.coeffs == (Fraction(-3, 2),)
    assert s.den > 0


def test_zeta4_squares_to_minus_one():
    z = root_of_unity(4)
    assert z * z == -1


def test_zeta3_product_reduces_to_one():
    z = root_of_unity(3)
    assert (1 + z) * (1 + z * z) == 1


def test_zeta6_has_order_six():
    z = root_of_unity(6)
    powers = [z**k for k in range(1, 7)]
    assert powers.index(1) == 5
    assert order_of_root(z) == 6


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert len(cyclotomic_polynomial(12)) - 1 == totient(12) == 4


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        fdiv(root_of_unity(5), 0)
    with pytest.raises(ZeroDivisionError):
        to_scalar(0).inverse()


def test_conductor_limit(monkeypatch):
    monkeypatch.setenv("HOPFACT_CONDUCTOR_LIMIT", "8")
    primitive_root.cache_clear()
    try:
        with pytest.raises(ConductorLimitExceeded):
            primitive_root(9)
    finally:
        primitive_root.cache_clear()


def test_rational_values_demote():
    z = root_of_unity(8)
    assert isinstance(simplify(z**4), int)
    assert z**8 == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 8, 12])
def test_primitive_root_powers_are_distinct(n):
    z = primitive_root(n)
    vals = {render_scalar(z**k) for k in range(n)}
    assert len(vals) == n


@given(scalar_triples())
def test_field_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    if a != 0:
        assert a * a.inverse() == 1


@given(scalars(), scalars())
def test_promotion_commutes_with_addition(a, b):
    import math

    n = math.lcm(a.conductor, b.conductor)
    assume(n <= 64)
    lhs = to_scalar(a + b).promote(n)
    rhs = to_scalar(a.promote(n) + b.promote(n)).promote(n)
    assert lhs == rhs


@given(scalars())
def test_render_parse_round_trip(a):
    assert parse_scalar(render_scalar(a)) == a


def test_parse_shorthand():
    assert parse_scalar("zeta4^2") == -1
    assert parse_scalar("-3/2") == Fraction(-3, 2)
