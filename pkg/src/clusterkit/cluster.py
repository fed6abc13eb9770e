"""Seeds, mutations (symbolic and numeric), positivity and finite-type checks.

A seed is an ordered cluster of Laurent polynomials (expansions in the initial
variables) together with a skew-symmetric integer exchange matrix.  Mutation
direction indices ``k`` are 1-based throughout, matching the usual convention
``1 <= k <= n``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BudgetExceeded,
    IndexOutOfRange,
    LaurentViolation,
    NotDivisible,
    ParseError,
    ZeroEntry,
)
from .laurent import LaurentPolynomial

__all__ = [
    "ExchangeMatrix",
    "Seed",
    "RationalTuple",
    "matrix_mutate",
    "seed_mutate",
    "numeric_mutate",
    "enumerate_cluster_variables",
    "check_positivity",
    "is_finite_type",
    "FiniteTypeResult",
    "seed_from_json",
    "seed_to_json",
]


class ExchangeMatrix:
    """Skew-symmetric integer matrix stored as a tuple of row tuples."""

    __slots__ = ("entries", "n")

    def __init__(self, entries):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("exchange matrix must be square")
        for i in range(n):
            for j in range(n):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError(
                        f"matrix is not skew-symmetric at ({i + 1},{j + 1})"
                    )
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "n", n)

    def __setattr__(self, name, value):
        raise AttributeError("ExchangeMatrix is immutable")

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, ExchangeMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"ExchangeMatrix({list(map(list, self.entries))})"

    def conjugate_by_rotation(self, r):
        """Conjugate by the cyclic rotation i -> i + r (mod n) of the index set."""
        n = self.n
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                rows[(i + r) % n][(j + r) % n] = self.entries[i][j]
        return ExchangeMatrix(rows)


@dataclass(frozen=True)
class Seed:
    """An ordered cluster of Laurent polynomials plus an exchange matrix."""

    cluster: tuple
    matrix: ExchangeMatrix

    def __post_init__(self):
        n = self.matrix.n
        if len(self.cluster) != n:
            raise ValueError(f"cluster has {len(self.cluster)} entries, matrix is {n}x{n}")
        for p in self.cluster:
            if p.nvars != n:
                raise ValueError("all cluster entries must live in the n initial variables")

    @property
    def n(self):
        return self.matrix.n

    @classmethod
    def initial(cls, matrix):
        """The identity seed (x1, ..., xn) for the given exchange matrix."""
        if not isinstance(matrix, ExchangeMatrix):
            matrix = ExchangeMatrix(matrix)
        n = matrix.n
        cluster = tuple(LaurentPolynomial.variable(i, n) for i in range(1, n + 1))
        return cls(cluster, matrix)


@dataclass(frozen=True)
class RationalTuple:
    """A tuple of nonzero rationals; the numeric shadow of a cluster."""

    values: tuple

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if any(v == 0 for v in vals):
            raise ZeroEntry("rational tuple entries must be nonzero")
        object.__setattr__(self, "values", vals)


def _check_direction(n, k):
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"direction k={k} out of range 1..{n}")


def matrix_mutate(B, k):
    """Mutate the exchange matrix in direction ``k`` (1-based)."""
    _check_direction(B.n, k)
    k -= 1
    n = B.n
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                rows[i][j] = -B[i, j]
            else:
                rows[i][j] = B[i, j] + (abs(B[i, k]) * B[k, j] + B[i, k] * abs(B[k, j])) // 2
    return ExchangeMatrix(rows)


def seed_mutate(s, k):
    """Mutate a seed in direction ``k``; the new variable must be Laurent."""
    _check_direction(s.n, k)
    n = s.n
    plus = LaurentPolynomial.one(n)
    minus = LaurentPolynomial.one(n)
    for i in range(n):
        b = s.matrix[i, k - 1]
        if b > 0:
            plus = plus * s.cluster[i] ** b
        elif b < 0:
            minus = minus * s.cluster[i] ** (-b)
    try:
        new_var = (plus + minus).div_exact(s.cluster[k - 1])
    except NotDivisible as exc:
        raise LaurentViolation(
            f"mutation in direction {k} produced a non-Laurent variable"
        ) from exc
    cluster = list(s.cluster)
    cluster[k - 1] = new_var
    return Seed(tuple(cluster), matrix_mutate(s.matrix, k))


def numeric_mutate(mu, B, k):
    """Numeric shadow of the exchange relation on a tuple of rationals."""
    _check_direction(B.n, k)
    values = mu.values if isinstance(mu, RationalTuple) else tuple(Fraction(v) for v in mu)
    if len(values) != B.n:
        raise IndexOutOfRange(f"tuple has {len(values)} entries, matrix is {B.n}x{B.n}")
    if values[k - 1] == 0:
        raise ZeroEntry(f"entry {k} is zero")
    plus = Fraction(1)
    minus = Fraction(1)
    for i in range(B.n):
        b = B[i, k - 1]
        if b > 0:
            plus *= values[i] ** b
        elif b < 0:
            minus *= values[i] ** (-b)
    new = list(values)
    new[k - 1] = (plus + minus) / values[k - 1]
    return RationalTuple(tuple(new))


def enumerate_cluster_variables(s, depth, budget=100_000):
    """Distinct cluster variables in all seeds within ``depth`` mutations.

    Seeds are deduplicated by strict equality; traversal is breadth-first with
    children generated in direction order k = 1..n.
    """
    seen = {s}
    variables = set(s.cluster)
    frontier = [s]
    for _ in range(depth):
        next_frontier = []
        for seed in frontier:
            for k in range(1, seed.n + 1):
                child = seed_mutate(seed, k)
                if child in seen:
                    continue
                seen.add(child)
                if len(seen) > budget:
                    raise BudgetExceeded(f"seed budget {budget} exceeded")
                variables.update(child.cluster)
                next_frontier.append(child)
        frontier = next_frontier
        if not frontier:
            break
    return variables


def check_positivity(variables):
    """Return (True, None) if every polynomial has positive coefficients,
    otherwise (False, first offending polynomial in canonical order)."""
    for p in sorted(variables, key=lambda q: q.render()):
        if not p.is_nonneg():
            return False, p
    return True, None


@dataclass(frozen=True)
class FiniteTypeResult:
    """Either Finite(count of distinct cluster variables) or ExceededBudget."""

    finite: bool
    count: int | None = None

    @classmethod
    def finite_with(cls, count):
        return cls(True, count)

    @classmethod
    def exceeded(cls):
        return cls(False, None)


def _numeric_seed_bfs(s, budget, point):
    """BFS over numeric seed shadows; returns the number of distinct shadows
    or None once the budget is exceeded.

    Numeric shadows keep deep infinite-type searches cheap: rational values
    grow with the level while symbolic Laurent expansions grow quadratically.
    """
    start = (tuple(Fraction(p) for p in point), s.matrix)
    seen = {start}
    queue = deque([start])
    while queue:
        values, B = queue.popleft()
        for k in range(1, B.n + 1):
            child = (numeric_mutate(values, B, k).values, matrix_mutate(B, k))
            if child in seen:
                continue
            seen.add(child)
            if len(seen) > budget:
                return None
            queue.append(child)
    return len(seen)


def is_finite_type(s, budget=10_000):
    """Decide whether BFS over seeds reaches a fixpoint within ``budget`` nodes.

    A numeric shadow BFS (exact rationals at a generic positive point) runs
    first; only when it reaches a fixpoint is the result confirmed by the
    symbolic BFS, which then reports the exact count of cluster variables.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    primes = [2, 3, 5, 7, 11, 13][: s.n]
    point = [Fraction(p) for p in primes] + [Fraction(2)] * max(0, s.n - len(primes))
    numeric_count = _numeric_seed_bfs(s, budget, point[: s.n])
    if numeric_count is None:
        return FiniteTypeResult.exceeded()
    try:
        variables = enumerate_cluster_variables(s, depth=budget, budget=budget)
    except BudgetExceeded:
        return FiniteTypeResult.exceeded()
    return FiniteTypeResult.finite_with(len(variables))


# -- seed JSON schema ------------------------------------------------------


def seed_from_json(data):
    """Build a seed from the documented JSON schema.

    Schema: ``{"n": int, "B": [[int, ...], ...]}`` with an optional
    ``"cluster"`` list of polynomial strings (defaults to the identity).
    """
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    if not isinstance(data, dict):
        raise ParseError("seed JSON must be an object")
    if "n" not in data or "B" not in data:
        raise ParseError('seed JSON requires keys "n" and "B"')
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise ParseError(f'"n" must be a positive integer, got {n!r}')
    B = data["B"]
    if (
        not isinstance(B, list)
        or len(B) != n
        or any(not isinstance(row, list) or len(row) != n for row in B)
    ):
        raise ParseError(f'"B" must be an {n}x{n} integer matrix')
    try:
        matrix = ExchangeMatrix(B)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    if "cluster" in data:
        strings = data["cluster"]
        if not isinstance(strings, list) or len(strings) != n:
            raise ParseError(f'"cluster" must be a list of {n} polynomial strings')
        cluster = tuple(LaurentPolynomial.parse(text, nvars=n) for text in strings)
        return Seed(cluster, matrix)
    return Seed.initial(matrix)


def seed_to_json(s):
    """Serialize a seed back to the documented JSON schema."""
    return {
        "n": s.n,
        "B": [list(row) for row in s.matrix.entries],
        "cluster": [p.render() for p in s.cluster],
    }
