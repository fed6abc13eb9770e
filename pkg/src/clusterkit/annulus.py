"""The rank-2 annulus case study.

Exact recurrence variables x_{i-1} x_{i+1} = x_i^2 + 1 in the initial cluster
(x1, x2), the canonical basis families, the Casimir element, the modulus
equations x1*x2 = 2t and x1^2 + x2^2 = t^2, the admissible modulus set, and
the exact trace-exchange coefficient identity.

Real-valued operations use double precision with explicit 1e-12 tolerances;
everything symbolic stays exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BoundExceeded, DiscriminantNegative, InvalidParameters
from .laurent import LaurentPolynomial, chebyshev_T

__all__ = [
    "a11_variable",
    "casimir",
    "canonical_basis_element",
    "ModulusSolution",
    "solve_moduli",
    "admissible_moduli",
    "AdmissibleModuli",
    "roots_of_unity_check",
    "tau_identity_residual",
    "verify_trace_exchange",
]

DEFAULT_INDEX_BOUND = 12

_cache = {}


def a11_variable(i, bound=DEFAULT_INDEX_BOUND):
    """Exact Laurent expansion of the i-th recurrence variable in (x1, x2).

    Positions 1 and 2 are the initial cluster; the recurrence runs in both
    directions, so any integer ``i`` with ``|i| <= bound`` is allowed.
    """
    if abs(i) > bound:
        raise BoundExceeded(f"index {i} exceeds bound {bound}")
    if i in _cache:
        return _cache[i]
    x1 = LaurentPolynomial.variable(1, 2)
    x2 = LaurentPolynomial.variable(2, 2)
    _cache[1] = x1
    _cache[2] = x2
    one = LaurentPolynomial.one(2)
    # extend upward: x_{j+1} = (x_j^2 + 1) / x_{j-1}
    top = max(_cache)
    while top < i:
        _cache[top + 1] = (_cache[top] ** 2 + one).div_exact(_cache[top - 1])
        top += 1
    bottom = min(_cache)
    while bottom > i:
        _cache[bottom - 1] = (_cache[bottom] ** 2 + one).div_exact(_cache[bottom + 1])
        bottom -= 1
    return _cache[i]


def casimir():
    """The element x1*x4 - x2*x3, expanded in the initial cluster."""
    value = a11_variable(1) * a11_variable(4) - a11_variable(2) * a11_variable(3)
    x1 = LaurentPolynomial.variable(1, 2)
    x2 = LaurentPolynomial.variable(2, 2)
    expected = (x1**2 + 1 + x2**2).div_exact(x1 * x2)
    assert value == expected, "Casimir element disagrees with its closed form"
    return value


def canonical_basis_element(p=None, q=None, n=None, i=1):
    """An element of the canonical basis of the rank-2 annulus algebra.

    Either the monomial family ``x_i^p x_{i+1}^q`` (give ``p, q >= 0``) or the
    Chebyshev family ``T_n`` composed with the Casimir element (give
    ``n >= 3``).
    """
    if n is None:
        if p is None or q is None or p < 0 or q < 0:
            raise InvalidParameters("monomial family needs p, q >= 0")
        return a11_variable(i) ** p * a11_variable(i + 1) ** q
    if p is not None or q is not None:
        raise InvalidParameters("give either (p, q) or n, not both")
    if n < 3:
        raise InvalidParameters("Chebyshev family needs n >= 3")
    return chebyshev_T(n).substitute((casimir(),))


@dataclass(frozen=True)
class ModulusSolution:
    """A positive solution of x1*x2 = 2t, x1^2 + x2^2 = t^2 for t >= 4.

    The residuals are relative to each equation's scale (max(1, 2t) and
    max(1, t^2)); double precision cannot do better than scale-relative
    accuracy once t^2 dwarfs the unit in the last place.
    """

    t: float
    x1: float
    x2: float
    residual1: float
    residual2: float


def solve_moduli(t, tolerance=1e-12):
    """Solve the modulus equations for ``t >= 4`` in double precision.

    Also asserts, via the numeric recurrence, that x1*x4 - x2*x3 equals
    (t + 1/t) / 2 at the solved point.
    """
    t = float(t)
    disc = t * t * (t * t - 16.0)
    if disc < 0:
        raise DiscriminantNegative(
            f"t={t} < 4: discriminant t^2 (t^2 - 16) = {disc} is negative"
        )
    root = math.sqrt(t * t - 16.0)
    x1 = math.sqrt(2.0) / 2.0 * math.sqrt(t * t + t * root)
    x2 = math.sqrt(2.0) / 2.0 * math.sqrt(t * t - t * root)
    residual1 = abs(x1 * x2 - 2.0 * t) / max(1.0, 2.0 * t)
    residual2 = abs(x1 * x1 + x2 * x2 - t * t) / max(1.0, t * t)
    if residual1 > tolerance or residual2 > tolerance:
        raise AssertionError(
            f"modulus residuals {residual1}, {residual2} exceed tolerance"
        )
    x3 = (x2 * x2 + 1.0) / x1
    x4 = (x3 * x3 + 1.0) / x2
    cas = x1 * x4 - x2 * x3
    assert abs(cas - 0.5 * (t + 1.0 / t)) <= tolerance * max(1.0, t), (
        f"Casimir value {cas} != (t + 1/t)/2 at t={t}"
    )
    return ModulusSolution(t, x1, x2, residual1, residual2)


@dataclass(frozen=True)
class AdmissibleModuli:
    """The admissible modulus set: the ray [4, inf) plus the discrete series
    t_n = 4 cos^2(pi/n) with lambda_n = 2 cos(pi/n), n >= 3."""

    continuous: tuple
    discrete: list  # (n, t_n, lambda_n)


def admissible_moduli(n_max):
    if n_max < 3:
        raise InvalidParameters("n_max must be >= 3")
    discrete = []
    for n in range(3, n_max + 1):
        lam = 2.0 * math.cos(math.pi / n)
        discrete.append((n, lam * lam, lam))
    return AdmissibleModuli((4.0, math.inf), discrete)


def roots_of_unity_check(n):
    """Residual |t^n + t^-n - 2| at t = exp(2 pi i / n), double precision."""
    if n < 3:
        raise InvalidParameters("n must be >= 3")
    t = cmath.exp(2j * cmath.pi / n)
    return abs(t**n + t**-n - 2.0)


def tau_identity_residual(n):
    """Residual |t/(1+t)^2 - 1/(4 cos^2(pi/n))| at t = exp(2 pi i / n).

    The quotient t/(1+t)^2 is real at the n-th root of unity even though t is
    complex; the residual measures both that reality and the closed form.
    """
    if n < 3:
        raise InvalidParameters("n must be >= 3")
    t = cmath.exp(2j * cmath.pi / n)
    return abs(t / (1 + t) ** 2 - 1.0 / (4.0 * math.cos(math.pi / n) ** 2))


def verify_trace_exchange(t):
    """Exact check of the trace-exchange coefficient identity at rational t.

    Substituting x1*x2 = 2t and x1^2 + x2^2 = t^2 into
    x1*x2 / (2 (x1^2 + x2^2 + x1*x2 + 1)) must give t / (1+t)^2.
    """
    t = Fraction(t)
    if t <= 0:
        raise InvalidParameters("t must be a positive rational")
    lhs = (2 * t) / (2 * (t * t + 2 * t + 1))
    rhs = t / (1 + t) ** 2
    return lhs == rhs
