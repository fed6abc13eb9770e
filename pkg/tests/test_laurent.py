"""Ring axioms, exact division, parsing, and the Chebyshev family."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterkit.errors import DivisionByZero, NotDivisible, ParseError, ZeroCoordinate
from clusterkit.laurent import LaurentPolynomial, chebyshev_T


def small_polys(nvars=2, max_terms=4):
    exponents = st.tuples(*([st.integers(-3, 3)] * nvars))
    return st.dictionaries(
        exponents, st.integers(-9, 9), min_size=0, max_size=max_terms
    ).map(lambda terms: LaurentPolynomial(nvars, terms))


@given(small_polys(), small_polys(), small_polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + LaurentPolynomial.zero(2) == a
    assert a * LaurentPolynomial.one(2) == a


@given(small_polys(), small_polys())
def test_exact_division_roundtrip(a, b):
    if b.is_zero():
        with pytest.raises(DivisionByZero):
            (a * b).div_exact(b)
        return
    assert (a * b).div_exact(b) == a


def test_division_failure_is_detected():
    x1 = LaurentPolynomial.variable(1, 2)
    x2 = LaurentPolynomial.variable(2, 2)
    with pytest.raises(NotDivisible):
        (x1 + x2).div_exact(x1 + LaurentPolynomial.one(2))
    # difference of squares divides cleanly
    assert (x1 * x1 - x2 * x2).div_exact(x1 - x2) == x1 + x2


@given(small_polys(nvars=3, max_terms=5))
def test_render_parse_roundtrip(p):
    assert LaurentPolynomial.parse(p.render(), nvars=3) == p


def test_parse_rejects_garbage():
    for text in ["x1 +", "3**x1", "x0", "x1^", "2 2"]:
        with pytest.raises(ParseError):
            LaurentPolynomial.parse(text, nvars=2)


@given(
    small_polys(),
    small_polys(),
    st.tuples(st.fractions(), st.fractions()),
)
@settings(max_examples=60)
def test_eval_is_a_homomorphism(a, b, point):
    if any(v == 0 for v in point):
        return
    try:
        va, vb = a.eval(point), b.eval(point)
    except ZeroCoordinate:
        return
    assert (a + b).eval(point) == va + vb
    assert (a * b).eval(point) == va * vb


def test_eval_rejects_zero_coordinates():
    p = LaurentPolynomial(1, {(-1,): 1})
    with pytest.raises(ZeroCoordinate):
        p.eval((Fraction(0),))


def test_chebyshev_known_values():
    x = LaurentPolynomial.variable(1, 1)
    one = LaurentPolynomial.one(1)
    assert chebyshev_T(0) == one
    assert chebyshev_T(1) == x
    assert chebyshev_T(2) == 2 * x * x - one
    assert chebyshev_T(3) == 4 * x**3 - 3 * x


@pytest.mark.parametrize("n", range(1, 21))
def test_chebyshev_half_sum_identity(n):
    # T_n((t + 1/t) / 2) = (t^n + t^-n) / 2, exactly at rational points
    for val in (Fraction(2), Fraction(3, 2), Fraction(-5, 3)):
        u = (val + 1 / val) / 2
        direct = chebyshev_T(n).eval((u,))
        assert direct == (val**n + val**-n) / 2


def test_power_of_unit_monomials():
    m = LaurentPolynomial(2, {(1, -2): -1})
    assert m**-3 == LaurentPolynomial(2, {(-3, 6): -1})
    p = LaurentPolynomial(2, {(0, 0): 1, (1, 0): 1})
    with pytest.raises(NotDivisible):
        p**-1
