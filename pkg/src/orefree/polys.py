"""Dense univariate polynomials over the rationals.

A :class:`Poly` stores its coefficients as a tuple of
:class:`fractions.Fraction` in ascending degree order together with the
name of its variable. Trailing zeros are stripped on construction, so the
zero polynomial has an empty coefficient tuple and degree ``ZERO_DEGREE``.

Besides ring arithmetic the module provides the pieces of commutative
algebra the rest of the package needs: Euclidean gcd, resultants,
square-free decomposition, rational roots and irreducible factorization
over Q for square-free cofactors of degree at most four.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .errors import UnsupportedFactorization

ZERO_DEGREE = -1
MAX_FACTOR_DEGREE = 4


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as a rational coefficient")


def _fmt_frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class Poly:
    """Immutable polynomial with rational coefficients."""

    __slots__ = ("coeffs", "var", "_hash")

    def __init__(self, coeffs: Iterable = (), var: str = "s"):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.var = var
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def constant(cls, c, var: str = "s") -> "Poly":
        return cls([c], var)

    @classmethod
    def gen(cls, var: str = "s") -> "Poly":
        return cls([0, 1], var)

    @classmethod
    def monomial(cls, n: int, c=1, var: str = "s") -> "Poly":
        return cls([0] * n + [c], var)

    @classmethod
    def from_roots(cls, roots: Iterable, var: str = "s") -> "Poly":
        p = cls([1], var)
        for r in roots:
            p = p * cls([-_frac(r), 1], var)
        return p

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.var != self.var and other.degree > 0 and self.degree > 0:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            if other.var != self.var:
                return Poly(other.coeffs, self.var)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other], self.var)
        return NotImplemented

    # basic properties -----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs) if len(self.coeffs) > 1 else hash(self[0])
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, var={self.var!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = _fmt_frac(a)
            else:
                mono = self.var if i == 1 else f"{self.var}^{i}"
                body = mono if a == 1 else f"{_fmt_frac(a)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # arithmetic -----------------------------------------------------------

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.var)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out, self.var)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs], self.var)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lcb = other.lc
        quo = [Fraction(0)] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = c / lcb
            quo[k - db] = q
            for j, b in enumerate(other.coeffs):
                rem[k - db + j] -= q * b
        return Poly(quo, self.var), Poly(rem[:db] if db > 0 else [], self.var)

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    # evaluation and substitution -----------------------------------------

    def __call__(self, x):
        """Evaluate by Horner's rule; ``x`` may be a number or a polynomial."""
        if isinstance(x, Poly):
            acc = Poly([], x.var)
        else:
            x = _frac(x)
            acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, c) -> "Poly":
        """Return ``p(v + c)``."""
        c = _frac(c)
        if c == 0 or self.is_constant():
            return self
        return self(Poly([c, 1], self.var))

    def scale(self, q) -> "Poly":
        """Return ``p(q*v)``."""
        q = _frac(q)
        out, pw = [], Fraction(1)
        for c in self.coeffs:
            out.append(c * pw)
            pw *= q
        return Poly(out, self.var)

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lc = self.lc
        if lc == 1:
            return self
        return Poly([c / lc for c in self.coeffs], self.var)

    def with_var(self, var: str) -> "Poly":
        return self if var == self.var else Poly(self.coeffs, var)

    def primitive_int(self) -> tuple[Fraction, list[int]]:
        """Split as ``content * p`` with ``p`` a primitive integer polynomial, positive lead."""
        if self.is_zero():
            return Fraction(0), []
        den = reduce(math.lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(math.gcd, ints, 0)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), [c // g for c in ints]

    def valuation(self) -> int:
        """Order of vanishing at zero (``ZERO_DEGREE`` for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return ZERO_DEGREE


# ---------------------------------------------------------------------------
# gcd, resultant, square-free decomposition


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly([], a.var)
    return (a * b // gcd(a, b)).monic()


def xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, x, y)`` with ``x*a + y*b = g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = Poly([1], a.var), Poly([], a.var)
    t0, t1 = Poly([], a.var), Poly([1], a.var)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lc = r0.lc
    return r0.monic(), s0 * (1 / lc), t0 * (1 / lc)


def resultant(a: Poly, b: Poly) -> Fraction:
    """Resultant of two polynomials by the Euclidean recurrence."""
    if a.is_zero() or b.is_zero():
        return Fraction(0)
    result = Fraction(1)
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return result * b.lc ** da
        r = a % b
        if r.is_zero():
            return Fraction(0)
        if da % 2 == 1 and db % 2 == 1:
            result = -result
        result *= b.lc ** (da - r.degree)
        a, b = b, r


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic square-free ``a_i`` with ``p ~ prod a_i**i``."""
    if p.is_constant():
        return []
    p = p.monic()
    dp = p.derivative()
    a = gcd(p, dp)
    b = p // a
    c = dp // a
    out = []
    i = 1
    while not b.is_constant():
        d = c - b.derivative()
        g = gcd(b, d)
        if not g.is_constant():
            out.append((g, i))
        b = b // g
        c = d // g
        i += 1
    return out


# ---------------------------------------------------------------------------
# rational roots and factorization


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: Poly) -> list[Fraction]:
    """Distinct rational roots of ``p`` in increasing order."""
    if p.is_zero():
        raise ValueError("the zero polynomial has every rational root")
    roots = set()
    v = p.valuation()
    if v > 0:
        roots.add(Fraction(0))
        p = Poly(p.coeffs[v:], p.var)
    if p.degree <= 0:
        return sorted(roots)
    _, ints = p.primitive_int()
    if p.degree == 1:
        roots.add(Fraction(-ints[0], ints[1]))
        return sorted(roots)
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and p(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _quadratic_factor(p: Poly) -> Poly | None:
    """Find a monic quadratic factor of a quartic with no rational roots (Kronecker)."""
    _, ints = p.primitive_int()
    q = Poly(ints, p.var)
    points = (0, 1, -1)
    values = [int(q(x)) for x in points]
    choices = [[d for k in _divisors(v) for d in (k, -k)] for v in values]
    for v0, v1, vm in itertools.product(*choices):
        # interpolate c + b*x + a*x^2 through (0,v0), (1,v1), (-1,vm)
        a2 = Fraction(v1 + vm - 2 * v0, 2)
        if a2 == 0:
            continue
        b1 = Fraction(v1 - vm, 2)
        cand = Poly([v0, b1, a2], p.var)
        if (q % cand).is_zero():
            return cand.monic()
    return None


def _split_squarefree(p: Poly) -> list[Poly]:
    """Monic irreducible factors of a monic square-free polynomial."""
    factors = []
    for r in rational_roots(p):
        lin = Poly([-r, 1], p.var)
        factors.append(lin)
        p = p.exact_div(lin)
    if p.degree <= 0:
        return factors
    if p.degree <= 3:
        return factors + [p.monic()]
    if p.degree == 4:
        quad = _quadratic_factor(p)
        if quad is None:
            return factors + [p.monic()]
        return factors + [quad, p.exact_div(quad).monic()]
    raise UnsupportedFactorization(
        f"factor of degree {p.degree} without rational roots: {p.monic()} "
        f"(irreducible factorization is supported up to degree {MAX_FACTOR_DEGREE})"
    )


def factor(p: Poly) -> tuple[Fraction, list[tuple[Poly, int]]]:
    """Return ``(lc, [(f, m), ...])`` with monic irreducible ``f`` and ``p = lc * prod f**m``.

    Linear factors are found for any degree; the cofactor left after
    removing them must have degree at most four.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    out = []
    for part, mult in squarefree_decomposition(p):
        for f in _split_squarefree(part):
            out.append((f, mult))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs, fm[1]))
    return p.lc, out


def is_irreducible(p: Poly) -> bool:
    if p.degree <= 0:
        return False
    _, fs = factor(p)
    return len(fs) == 1 and fs[0][1] == 1


def interpolate(xs: Sequence, ys: Sequence, var: str = "s") -> Poly:
    """Lagrange interpolation through the points ``(xs[i], ys[i])``."""
    result = Poly([], var)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        term = Poly([yi], var)
        for j, xj in enumerate(xs):
            if j != i:
                term = term * Poly([-_frac(xj), 1], var) * (1 / (_frac(xi) - _frac(xj)))
        result = result + term
    return result
