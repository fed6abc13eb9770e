"""Dimension groups as inductive limits of integer lattices.

Elements are integer vectors attached to a diagram level; pushing an element
forward multiplies by the incidence matrices.  Equality and positivity are
decided up to a configurable horizon and return ``UNKNOWN`` when the horizon
is insufficient, rather than guessing.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidFactor, LevelOutOfRange, NotComparable, NotPrimitive
from .laurent import LaurentPolynomial

__all__ = [
    "K0Element",
    "Decision",
    "K0Decision",
    "SupernaturalNumber",
    "k0_push",
    "k0_equal",
    "k0_is_positive",
    "trace_state",
    "TraceState",
    "supernatural_of",
    "qn_contains",
    "gicar_rho",
    "gicar_is_positive",
    "riesz_interpolate",
    "pascal_diagram",
]

DEFAULT_HORIZON = 64


@dataclass(frozen=True)
class K0Element:
    """An inductive-limit class: an integer vector at a diagram level."""

    level: int
    vector: tuple

    def __post_init__(self):
        object.__setattr__(self, "vector", tuple(int(v) for v in self.vector))
        if self.level < 0:
            raise LevelOutOfRange(f"negative level {self.level}")


class Decision(enum.Enum):
    EQUAL = "equal"
    NOT_EQUAL = "not_equal"
    POSITIVE = "positive"
    POSITIVE_ZERO = "positive_zero"
    NOT_POSITIVE = "not_positive"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class K0Decision:
    status: Decision
    certificate: object = None


def _check_level(d, level):
    if level < 0 or (d.num_levels() is not None and level >= d.num_levels()):
        raise LevelOutOfRange(f"level {level} outside diagram")


def _mat_vec(mat, vec):
    return tuple(sum(row[s] * vec[s] for s in range(len(vec))) for row in mat)


def k0_push(e, d, target_level):
    """Push ``e`` forward to ``target_level`` through the incidence matrices."""
    _check_level(d, e.level)
    _check_level(d, target_level)
    if target_level < e.level:
        raise LevelOutOfRange(
            f"target level {target_level} below element level {e.level}"
        )
    if len(e.vector) != d.level_size(e.level):
        raise LevelOutOfRange(
            f"vector length {len(e.vector)} != level size {d.level_size(e.level)}"
        )
    vec = e.vector
    for m in range(e.level, target_level):
        vec = _mat_vec(d.incidence(m), vec)
    return K0Element(target_level, vec)


def _max_level(d, horizon):
    if d.num_levels() is None:
        return horizon
    return min(horizon, d.num_levels() - 1)


def _is_injective(mat, cols):
    """Full column rank over the rationals, by fraction-free elimination."""
    rows = [[Fraction(x) for x in row] for row in mat]
    rank = 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            return False
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][col]:
                f = rows[r][col] / prow[col]
                rows[r] = [a - f * b for a, b in zip(rows[r], prow)]
        rank += 1
    return True


def k0_equal(a, b, d, horizon=DEFAULT_HORIZON):
    """Decide equality of two inductive-limit classes up to ``horizon``."""
    top = _max_level(d, horizon)
    start = max(a.level, b.level)
    if start > top:
        return K0Decision(Decision.UNKNOWN)
    va = k0_push(a, d, start).vector
    vb = k0_push(b, d, start).vector
    all_injective = True
    for level in range(start, top + 1):
        if va == vb:
            return K0Decision(Decision.EQUAL)
        if level < top:
            mat = d.incidence(level)
            if not _is_injective(mat, d.level_size(level)):
                all_injective = False
            va = _mat_vec(mat, va)
            vb = _mat_vec(mat, vb)
    if va == vb:
        return K0Decision(Decision.EQUAL)
    if all_injective:
        return K0Decision(Decision.NOT_EQUAL)
    return K0Decision(Decision.UNKNOWN)


def k0_is_positive(e, d, horizon=DEFAULT_HORIZON, tolerance=1e-9):
    """Decide membership in the positive cone up to ``horizon``.

    Positivity holds when some push is coordinatewise nonnegative and nonzero;
    the zero class reports POSITIVE_ZERO.  For stationary primitive diagrams a
    strictly negative Perron functional at the horizon certifies NOT_POSITIVE.
    """
    top = _max_level(d, horizon)
    vec = k0_push(e, d, min(e.level, top)).vector
    level = e.level
    while True:
        if all(v == 0 for v in vec):
            return K0Decision(Decision.POSITIVE_ZERO)
        if all(v >= 0 for v in vec):
            return K0Decision(Decision.POSITIVE)
        if level >= top:
            break
        vec = _mat_vec(d.incidence(level), vec)
        level += 1
    stationary = getattr(d, "stationary_matrix", None)
    if stationary is not None:
        try:
            state = trace_state(d)
        except NotPrimitive:
            return K0Decision(Decision.UNKNOWN)
        value = sum(w * v for w, v in zip(state.weights, vec))
        if value < -tolerance:
            return K0Decision(
                Decision.NOT_POSITIVE,
                certificate={"level": level, "vector": vec, "perron_value": value},
            )
    return K0Decision(Decision.UNKNOWN)


@dataclass(frozen=True)
class TraceState:
    """Normalized Perron left-eigenvector weights at level 0 plus eigenvalue."""

    weights: tuple
    eigenvalue: float

    def value(self, e):
        """Trace of an element: Perron pairing scaled by the level depth."""
        return sum(w * v for w, v in zip(self.weights, e.vector)) / (
            self.eigenvalue**e.level
        )


def _is_primitive(mat):
    n = len(mat)
    if any(sum(row) == 0 for row in mat):
        return False
    # Wielandt bound: A primitive iff A^(n^2 - 2n + 2) is strictly positive
    power = max(n * n - 2 * n + 2, 1)
    reach = [[1 if mat[i][j] else 0 for j in range(n)] for i in range(n)]
    cur = reach
    for _ in range(power - 1):
        nxt = [[0] * n for _ in range(n)]
        for i in range(n):
            for k in range(n):
                if cur[i][k]:
                    for j in range(n):
                        if reach[k][j]:
                            nxt[i][j] = 1
        cur = nxt
    return all(all(row) for row in cur)


def trace_state(d, tolerance=1e-12, max_iter=100_000):
    """Perron-Frobenius trace data of a stationary diagram.

    The diagram must carry a ``stationary_matrix`` (see
    ``bratteli.stationary_diagram``) that is primitive.  The left eigenvector
    is computed by power iteration to ``tolerance`` and normalized to sum 1.
    """
    mat = getattr(d, "stationary_matrix", None)
    if mat is None:
        mat = d.incidence(0) if d.num_levels() and d.num_levels() > 1 else None
    if mat is None:
        raise NotPrimitive("diagram has no incidence data")
    if not _is_primitive(mat):
        raise NotPrimitive("incidence matrix is not primitive")
    n = len(mat)
    w = [1.0 / n] * n
    eigenvalue = 0.0
    for _ in range(max_iter):
        # left multiplication: (wA)_j = sum_i w_i A[i][j]
        nxt = [sum(w[i] * mat[i][j] for i in range(n)) for j in range(n)]
        eigenvalue = sum(nxt)
        nxt = [x / eigenvalue for x in nxt]
        # iterate well past the requested tolerance so ratios of the
        # eigenvector entries are accurate to the tolerance as well
        if max(abs(a - b) for a, b in zip(nxt, w)) < tolerance * 1e-4:
            w = nxt
            break
        w = nxt
    return TraceState(tuple(w), eigenvalue)


# -- supernatural numbers --------------------------------------------------


@dataclass(frozen=True)
class SupernaturalNumber:
    """Map prime -> exponent in {0, 1, ...} or infinity (math.inf)."""

    exponents: tuple  # sorted tuple of (prime, exponent) pairs

    def exponent(self, p):
        for q, e in self.exponents:
            if q == p:
                return e
        return 0


def _factorize(n):
    factors = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def supernatural_of(block):
    """Supernatural number of a periodic factor sequence.

    Every prime dividing some block element gets exponent infinity (the block
    repeats forever); all other primes get exponent 0.
    """
    primes = set()
    for k in block:
        if k < 2:
            raise InvalidFactor(f"factors must be >= 2, got {k}")
        primes.update(_factorize(k))
    return SupernaturalNumber(tuple((p, math.inf) for p in sorted(primes)))


def qn_contains(n, r):
    """True iff the reduced denominator of ``r`` divides the supernatural number."""
    r = Fraction(r)
    for p, e in _factorize(r.denominator).items():
        if n.exponent(p) < e:
            return False
    return True


# -- Pascal-triangle diagram and the polynomial picture --------------------


def pascal_diagram(num_levels):
    """The Pascal-triangle diagram: level m has m+1 vertices and vertex k at
    level m connects to vertices k and k+1 at level m+1."""
    from .bratteli import BratteliDiagram

    sizes = list(range(1, num_levels + 1))
    edges = []
    for m in range(num_levels - 1):
        step = {}
        for k in range(m + 1):
            step[(k, k)] = 1
            step[(k, k + 1)] = 1
        edges.append(step)
    return BratteliDiagram(sizes, edges)


def gicar_rho(k, n):
    """The expanded integer polynomial x^k (1-x)^(n-k)."""
    if not 0 <= k <= n:
        raise IndexError(f"need 0 <= k <= n, got k={k}, n={n}")
    x = LaurentPolynomial.variable(1, 1)
    return x**k * (1 - x) ** (n - k)


def _poly_coeffs(p, max_degree):
    """Dense coefficient list of a univariate ordinary polynomial."""
    coeffs = [Fraction(0)] * (max_degree + 1)
    for (e,), c in p.terms.items():
        if e < 0 or e > max_degree:
            return None
        coeffs[e] += c
    return coeffs


def _coordinates_in_interval_basis(p, n):
    """Exact rational coordinates of ``p`` in the basis x^k (1-x)^(n-k).

    The basis is triangular in the monomial order (x^k (1-x)^(n-k) has lowest
    term x^k), so back-substitution from the constant term up suffices.
    """
    coeffs = _poly_coeffs(p, n)
    if coeffs is None:
        return None
    coords = [Fraction(0)] * (n + 1)
    residual = list(coeffs)
    for k in range(n + 1):
        c = residual[k]
        coords[k] = c
        if c:
            basis = _poly_coeffs(gicar_rho(k, n), n)
            for i in range(n + 1):
                residual[i] -= c * basis[i]
    if any(residual):
        return None
    return coords


def gicar_is_positive(p, max_degree=DEFAULT_HORIZON):
    """Decide positivity of an integer polynomial on the open interval (0, 1).

    POSITIVE when the polynomial has nonnegative coordinates in some basis
    {x^k (1-x)^(n-k)} with n <= max_degree; NOT_POSITIVE with an exact
    rational witness point where it evaluates negatively; UNKNOWN otherwise.
    """
    if p.nvars != 1:
        raise ValueError("gicar polynomials are univariate")
    if p.is_zero():
        raise ValueError("gicar_is_positive requires a nonzero polynomial")
    degree = max(e for (e,) in p.terms)
    if degree >= 0:
        for n in range(max(degree, 0), max_degree + 1):
            coords = _coordinates_in_interval_basis(p, n)
            if coords is not None and all(c >= 0 for c in coords):
                return K0Decision(
                    Decision.POSITIVE, certificate={"degree": n, "coordinates": coords}
                )
    # witness search: coarse grid, then refinement around the minimum
    witness = None
    best = Fraction(0)
    for k in range(1, 64):
        r = Fraction(k, 64)
        v = p.eval((r,))
        if v < best:
            best, witness = v, r
    if witness is None:
        for denom in (1024, 65536):
            for k in range(1, denom):
                r = Fraction(k, denom)
                v = p.eval((r,))
                if v < 0:
                    witness, best = r, v
                    break
            if witness is not None:
                break
    else:
        for denom in (256, 1024):
            lo = max(witness - Fraction(1, 32), Fraction(1, denom))
            hi = min(witness + Fraction(1, 32), 1 - Fraction(1, denom))
            k = int(lo * denom)
            while Fraction(k, denom) <= hi:
                r = Fraction(k, denom)
                if 0 < r < 1:
                    v = p.eval((r,))
                    if v < best:
                        best, witness = v, r
                k += 1
    if witness is not None:
        return K0Decision(
            Decision.NOT_POSITIVE, certificate={"point": witness, "value": best}
        )
    return K0Decision(Decision.UNKNOWN)


def riesz_interpolate(a1, a2, b1, b2):
    """Interpolate c with a_i <= c <= b_j coefficientwise.

    Requires every b_j - a_i to be coefficientwise nonnegative.  The
    coefficient of c at each monomial is the maximum of the coefficients of
    a1 and a2 there; both output inequalities are asserted before returning.
    """
    for a in (a1, a2):
        for b in (b1, b2):
            if not (b - a).is_nonneg():
                raise NotComparable(
                    f"({b.render()}) - ({a.render()}) has a negative coefficient"
                )
    nvars = a1.nvars
    support = set(a1.terms) | set(a2.terms)
    terms = {}
    for e in support:
        c = max(a1.terms.get(e, 0), a2.terms.get(e, 0))
        if c:
            terms[e] = c
    c = LaurentPolynomial(nvars, terms)
    for a in (a1, a2):
        assert (c - a).is_nonneg(), "interpolant fails lower bound"
    for b in (b1, b2):
        assert (b - c).is_nonneg(), "interpolant fails upper bound"
    return c
