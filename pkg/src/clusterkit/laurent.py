"""Exact multivariate Laurent-polynomial arithmetic over the integers.

Polynomials are finitely supported maps from integer exponent vectors to
nonzero arbitrary-precision integer coefficients.  All operations are pure;
instances are immutable after construction and hashable.

The text format fixes variable names ``x1 .. xn`` and renders terms
most-significant first (descending lexicographic on exponent vectors), e.g.
``3*x1^2*x2^-1 + 1``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import (
    DivisionByZero,
    NotDivisible,
    ParseError,
    VariableCountMismatch,
    ZeroCoordinate,
)

__all__ = [
    "LaurentPolynomial",
    "lp_add",
    "lp_mul",
    "lp_div_exact",
    "lp_eval",
    "lp_is_nonneg",
    "chebyshev_T",
]


class LaurentPolynomial:
    """A Laurent polynomial with integer coefficients in ``nvars`` variables.

    ``terms`` maps exponent tuples (length ``nvars``, entries may be negative)
    to nonzero integers.  Zero coefficients are never stored.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars, terms):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        clean = {}
        for exps, coef in terms.items():
            if len(exps) != nvars:
                raise VariableCountMismatch(
                    f"exponent vector {exps} has length {len(exps)}, expected {nvars}"
                )
            if coef:
                clean[tuple(exps)] = int(coef)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPolynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {})

    @classmethod
    def constant(cls, c, nvars):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars):
        return cls.constant(1, nvars)

    @classmethod
    def variable(cls, i, nvars):
        """The variable ``x<i>`` (1-based) as a polynomial in ``nvars`` variables."""
        if not 1 <= i <= nvars:
            raise VariableCountMismatch(f"variable index {i} out of range 1..{nvars}")
        exps = [0] * nvars
        exps[i - 1] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, coef, exps):
        return cls(len(exps), {tuple(exps): coef})

    # -- basic predicates --------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_nonneg(self):
        """True iff every stored coefficient is positive (zero poly included)."""
        return all(c > 0 for c in self.terms.values())

    def __bool__(self):
        return bool(self.terms)

    # -- canonical order / equality ----------------------------------------

    def sorted_terms(self):
        """Terms in descending lexicographic order on exponent vectors."""
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.nvars, tuple(self.sorted_terms())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- arithmetic --------------------------------------------------------

    def _check_compat(self, other):
        if not isinstance(other, LaurentPolynomial):
            raise TypeError(f"expected LaurentPolynomial, got {type(other).__name__}")
        if self.nvars != other.nvars:
            raise VariableCountMismatch(
                f"operands have {self.nvars} and {other.nvars} variables"
            )

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other, self.nvars)
        self._check_compat(other)
        terms = dict(self.terms)
        for exps, coef in other.terms.items():
            c = terms.get(exps, 0) + coef
            if c:
                terms[exps] = c
            else:
                terms.pop(exps, None)
        return LaurentPolynomial(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial(
                self.nvars, {e: c * other for e, c in self.terms.items()}
            )
        self._check_compat(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = terms.get(e, 0) + c1 * c2
                if c:
                    terms[e] = c
                else:
                    del terms[e]
        return LaurentPolynomial(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self.terms) != 1:
                raise NotDivisible("only monomials have negative powers")
            ((e, c),) = self.terms.items()
            if c not in (1, -1):
                raise NotDivisible(f"unit coefficient required, got {c}")
            return LaurentPolynomial(
                self.nvars, {tuple(k * x for x in e): 1 if k % 2 == 0 else c}
            )
        result = LaurentPolynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k >>= 1
        return result

    def shift(self, exps):
        """Multiply by the monomial with exponent vector ``exps``."""
        return LaurentPolynomial(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()},
        )

    def min_exponents(self):
        """Componentwise minimum exponent over the support (zero poly -> zeros)."""
        if not self.terms:
            return (0,) * self.nvars
        cols = zip(*self.terms.keys())
        return tuple(min(col) for col in cols)

    def div_exact(self, other):
        """Exact quotient ``self / other``; raises NotDivisible if inexact.

        Both operands are shifted by their componentwise-minimum exponents into
        ordinary polynomials, divided by graded-lex long division with a zero
        remainder required, and the quotient is shifted back.
        """
        self._check_compat(other)
        if other.is_zero():
            raise DivisionByZero("division by the zero polynomial")
        if self.is_zero():
            return LaurentPolynomial.zero(self.nvars)

        shift_p = self.min_exponents()
        shift_q = other.min_exponents()
        p = {tuple(a - b for a, b in zip(e, shift_p)): c for e, c in self.terms.items()}
        q = {tuple(a - b for a, b in zip(e, shift_q)): c for e, c in other.terms.items()}

        def key(e):
            return (sum(e), e)

        q_lead = max(q, key=key)
        q_lead_coef = q[q_lead]
        quo = {}
        rem = dict(p)
        while rem:
            lead = max(rem, key=key)
            diff = tuple(a - b for a, b in zip(lead, q_lead))
            if any(d < 0 for d in diff) or rem[lead] % q_lead_coef:
                raise NotDivisible("nonzero remainder in exact Laurent division")
            c = rem[lead] // q_lead_coef
            quo[diff] = c
            for e, qc in q.items():
                t = tuple(a + b for a, b in zip(e, diff))
                nc = rem.get(t, 0) - c * qc
                if nc:
                    rem[t] = nc
                else:
                    rem.pop(t, None)
        back = tuple(a - b for a, b in zip(shift_p, shift_q))
        return LaurentPolynomial(self.nvars, quo).shift(back)

    def eval(self, point):
        """Exact rational value at a point of nonzero rationals."""
        if len(point) != self.nvars:
            raise VariableCountMismatch(
                f"point has {len(point)} coordinates, expected {self.nvars}"
            )
        point = tuple(Fraction(x) for x in point)
        if any(x == 0 for x in point):
            raise ZeroCoordinate("evaluation point must have nonzero coordinates")
        total = Fraction(0)
        for exps, coef in self.terms.items():
            value = Fraction(coef)
            for x, e in zip(point, exps):
                value *= x**e
            total += value
        return total

    def substitute(self, values):
        """Substitute a LaurentPolynomial for each variable.

        Every ``values[i]`` must share a common variable count; negative
        exponents require the substituted value to be an invertible monomial.
        """
        if len(values) != self.nvars:
            raise VariableCountMismatch(
                f"{len(values)} values for {self.nvars} variables"
            )
        nvars = values[0].nvars
        total = LaurentPolynomial.zero(nvars)
        for exps, coef in self.terms.items():
            term = LaurentPolynomial.constant(coef, nvars)
            for v, e in zip(values, exps):
                if e >= 0:
                    term = term * v**e
                else:
                    term = term.div_exact(v ** (-e))
            total = total + term
        return total

    # -- text format -------------------------------------------------------

    def render(self):
        """Canonical text form, most-significant term first."""
        if not self.terms:
            return "0"
        parts = []
        for idx, (exps, coef) in enumerate(self.sorted_terms()):
            factors = [
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
                for i, e in enumerate(exps)
                if e != 0
            ]
            mag = abs(coef)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if idx == 0:
                parts.append(body if coef > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coef > 0 else f"- {body}")
        return " ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"LaurentPolynomial({self.nvars}, {self.render()!r})"

    @classmethod
    def parse(cls, text, nvars=None):
        """Parse the canonical text grammar; ``nvars`` defaults to the largest
        variable index occurring in the input (at least 1)."""
        tokens = _tokenize(text)
        raw_terms = _parse_terms(tokens, text)
        max_var = max((i for term in raw_terms for i, _ in term[1]), default=1)
        if nvars is None:
            nvars = max_var
        elif max_var > nvars:
            raise ParseError(f"variable x{max_var} exceeds declared nvars={nvars}")
        terms = {}
        for coef, factors in raw_terms:
            exps = [0] * nvars
            for i, e in factors:
                exps[i - 1] += e
            key = tuple(exps)
            terms[key] = terms.get(key, 0) + coef
        return cls(nvars, terms)


_TOKEN_RE = re.compile(r"\s*(x\d+|\d+|\^|\*|\+|-)")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected input at {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def _parse_terms(tokens, text):
    """Return a list of (coefficient, [(var_index, exponent), ...])."""
    if not tokens:
        raise ParseError(f"empty polynomial text {text!r}")
    terms = []
    pos = 0

    def parse_int(allow_sign):
        nonlocal pos
        sign = 1
        if allow_sign and pos < len(tokens) and tokens[pos] in "+-":
            sign = -1 if tokens[pos] == "-" else 1
            pos += 1
        if pos >= len(tokens) or not tokens[pos].isdigit():
            raise ParseError(f"expected integer in {text!r}")
        value = sign * int(tokens[pos])
        pos += 1
        return value

    while pos < len(tokens):
        sign = 1
        if tokens[pos] in "+-":
            sign = -1 if tokens[pos] == "-" else 1
            pos += 1
        coef = 1
        factors = []
        expect_factor = True
        saw_any = False
        while expect_factor:
            if pos >= len(tokens):
                if saw_any:
                    break
                raise ParseError(f"dangling operator in {text!r}")
            tok = tokens[pos]
            if tok.isdigit():
                coef *= int(tok)
                pos += 1
            elif tok.startswith("x"):
                idx = int(tok[1:])
                if idx < 1:
                    raise ParseError(f"bad variable {tok!r}")
                pos += 1
                e = 1
                if pos < len(tokens) and tokens[pos] == "^":
                    pos += 1
                    e = parse_int(allow_sign=True)
                factors.append((idx, e))
            else:
                raise ParseError(f"unexpected token {tok!r} in {text!r}")
            saw_any = True
            if pos < len(tokens) and tokens[pos] == "*":
                pos += 1
                expect_factor = True
            else:
                expect_factor = False
        if pos < len(tokens) and tokens[pos] not in "+-":
            raise ParseError(f"missing operator before {tokens[pos]!r} in {text!r}")
        terms.append((sign * coef, factors))
    return terms


# -- module-level operation aliases (stable public surface) ----------------


def lp_add(p, q):
    """Coefficientwise sum of two Laurent polynomials."""
    return p + q


def lp_mul(p, q):
    """Distributive product; exponent vectors add componentwise."""
    return p * q


def lp_div_exact(p, q):
    """Exact quotient ``p / q``; raises NotDivisible on nonzero remainder."""
    return p.div_exact(q)


def lp_eval(p, point):
    """Exact rational value of ``p`` at a tuple of nonzero rationals."""
    return p.eval(point)


def lp_is_nonneg(p):
    """True iff all coefficients of ``p`` are nonnegative."""
    return p.is_nonneg()


def chebyshev_T(n):
    """Chebyshev polynomial of the first kind, degree ``n``, univariate.

    T_0 = 1, T_1 = x, T_n = 2x*T_{n-1} - T_{n-2}.
    """
    if n < 0:
        raise IndexError(f"chebyshev_T needs n >= 0, got {n}")
    t0 = LaurentPolynomial.one(1)
    if n == 0:
        return t0
    x = LaurentPolynomial.variable(1, 1)
    t1 = x
    for _ in range(n - 1):
        t0, t1 = t1, 2 * x * t1 - t0
    return t1
