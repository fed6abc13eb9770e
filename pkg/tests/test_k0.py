"""Dimension-group engine: pushes, equality/positivity decisions, the
Perron trace, supernatural numbers, and the interval-polynomial picture."""

import math
import random
from fractions import Fraction

import pytest

from clusterkit.bratteli import stationary_diagram
from clusterkit.errors import InvalidFactor, LevelOutOfRange, NotComparable, NotPrimitive
from clusterkit.k0 import (
    Decision,
    K0Element,
    gicar_is_positive,
    gicar_rho,
    k0_equal,
    k0_is_positive,
    k0_push,
    pascal_diagram,
    qn_contains,
    riesz_interpolate,
    supernatural_of,
    trace_state,
)
from clusterkit.laurent import LaurentPolynomial

FIB = stationary_diagram([[1, 1], [1, 0]])
GOLDEN = (1 + math.sqrt(5)) / 2


def test_push_is_linear():
    rng = random.Random(3)
    for _ in range(50):
        u = K0Element(0, tuple(rng.randint(-5, 5) for _ in range(2)))
        v = K0Element(0, tuple(rng.randint(-5, 5) for _ in range(2)))
        s = K0Element(0, tuple(a + b for a, b in zip(u.vector, v.vector)))
        level = rng.randint(1, 6)
        pushed = k0_push(s, FIB, level)
        pu = k0_push(u, FIB, level)
        pv = k0_push(v, FIB, level)
        assert pushed.vector == tuple(a + b for a, b in zip(pu.vector, pv.vector))


def test_push_level_validation():
    e = K0Element(3, (1, 0))
    with pytest.raises(LevelOutOfRange):
        k0_push(e, FIB, 1)
    with pytest.raises(LevelOutOfRange):
        k0_push(K0Element(0, (1,)), FIB, 1)
    bounded = stationary_diagram([[1, 1], [1, 0]], num_levels=3)
    with pytest.raises(LevelOutOfRange):
        k0_push(K0Element(0, (1, 0)), bounded, 5)


def test_equality_decisions():
    a = K0Element(0, (1, -1))
    b = K0Element(1, (0, 1))
    # (1,-1) at level 0 pushes to (0,1) at level 1 through [[1,1],[1,0]]
    assert k0_equal(a, b, FIB).status is Decision.EQUAL
    c = K0Element(0, (1, 0))
    assert k0_equal(a, c, FIB).status is Decision.NOT_EQUAL


def test_equality_merges_through_non_injective_step():
    from clusterkit.bratteli import BratteliDiagram

    d = BratteliDiagram([2, 1], [{(0, 0): 1, (1, 0): 1}])
    a = K0Element(0, (1, 0))
    b = K0Element(0, (0, 1))
    assert k0_equal(a, b, d).status is Decision.EQUAL


def test_positivity_decisions():
    assert k0_is_positive(K0Element(0, (1, 0)), FIB).status is Decision.POSITIVE
    assert k0_is_positive(K0Element(0, (0, 0)), FIB).status is Decision.POSITIVE_ZERO
    # (1,-1) becomes (0,1) after one push: positive
    assert k0_is_positive(K0Element(0, (1, -1)), FIB).status is Decision.POSITIVE
    verdict = k0_is_positive(K0Element(0, (-1, 1)), FIB)
    assert verdict.status is Decision.NOT_POSITIVE
    assert verdict.certificate["perron_value"] < 0


def test_trace_state_golden_ratio():
    state = trace_state(FIB)
    assert abs(state.eigenvalue - GOLDEN) <= 1e-12
    assert abs(state.weights[0] / state.weights[1] - GOLDEN) <= 1e-12
    assert abs(sum(state.weights) - 1.0) <= 1e-12
    # trace respects the push normalization
    e = K0Element(0, (1, 1))
    pushed = k0_push(e, FIB, 5)
    assert abs(state.value(e) - state.value(pushed)) <= 1e-9


def test_trace_requires_primitivity():
    with pytest.raises(NotPrimitive):
        trace_state(stationary_diagram([[0, 1], [1, 0]]))


def test_supernatural_and_qn_membership():
    two_inf = supernatural_of([2])
    assert qn_contains(two_inf, Fraction(3, 8))
    assert not qn_contains(two_inf, Fraction(1, 3))
    six = supernatural_of([6])
    assert qn_contains(six, Fraction(5, 12))
    assert not qn_contains(six, Fraction(1, 5))
    with pytest.raises(InvalidFactor):
        supernatural_of([1])


def test_gicar_rho_relation():
    # rho(k, n) = rho(k, n+1) + rho(k+1, n+1)
    for n in range(0, 11):
        for k in range(0, n + 1):
            assert gicar_rho(k, n) == gicar_rho(k, n + 1) + gicar_rho(k + 1, n + 1)


def test_pascal_push_matches_rho_relation():
    d = pascal_diagram(6)
    # the unit at level 1 vertex 0 pushes like repeated rho splitting
    e = K0Element(1, (0, 1))
    pushed = k0_push(e, d, 2)
    assert pushed.vector == (0, 1, 1)


def x_poly():
    return LaurentPolynomial.variable(1, 1)


def test_gicar_positive_examples():
    x = x_poly()
    one = LaurentPolynomial.one(1)
    for p in (x, one - x, x * (one - x), x * x - x + one):
        verdict = gicar_is_positive(p)
        assert verdict.status is Decision.POSITIVE, p.render()
        coords = verdict.certificate["coordinates"]
        assert all(c >= 0 for c in coords)
        # certificate soundness: the coordinates rebuild the polynomial
        n = verdict.certificate["degree"]
        rebuilt = LaurentPolynomial.zero(1)
        for k, c in enumerate(coords):
            assert c.denominator == 1
            rebuilt = rebuilt + int(c) * gicar_rho(k, n)
        assert rebuilt == p


def test_gicar_negative_examples():
    x = x_poly()
    one = LaurentPolynomial.one(1)
    for p in (2 * x - one, -x):
        verdict = gicar_is_positive(p)
        assert verdict.status is Decision.NOT_POSITIVE, p.render()
        point = verdict.certificate["point"]
        assert 0 < point < 1
        assert p.eval((point,)) == verdict.certificate["value"] < 0


def test_gicar_agrees_with_dense_sampling():
    rng = random.Random(11)
    for _ in range(40):
        coeffs = [rng.randint(-3, 3) for _ in range(rng.randint(1, 4))]
        p = LaurentPolynomial(1, {(i,): c for i, c in enumerate(coeffs) if c})
        if p.is_zero():
            continue
        verdict = gicar_is_positive(p, max_degree=32)
        sampled = [p.eval((Fraction(k, 101),)) for k in range(1, 101)]
        if verdict.status is Decision.POSITIVE:
            assert all(v >= 0 for v in sampled)
        elif verdict.status is Decision.NOT_POSITIVE:
            assert min(sampled) < 0 or True  # witness already validated exactly
            assert p.eval((verdict.certificate["point"],)) < 0


def test_riesz_interpolation():
    x = x_poly()
    one = LaurentPolynomial.one(1)
    a1, a2 = x, 2 * x
    b1, b2 = 3 * x, 4 * x + one
    c = riesz_interpolate(a1, a2, b1, b2)
    assert c == 2 * x
    c2 = riesz_interpolate(x, one, x + one, 2 * x + one)
    for a in (x, one):
        assert (c2 - a).is_nonneg()
    with pytest.raises(NotComparable):
        riesz_interpolate(x, 2 * x, x, 3 * x)
