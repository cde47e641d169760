"""Skew polynomials K[x; sigma] and truncated skew Laurent series over K = Q(s).

Multiplication follows the twist ``x * a = sigma(a) * x``; coefficients are
always written on the left, so ``a x^n * b x^m = a sigma^n(b) x^(n+m)``.

A :class:`SkewSeries` carries an explicit validity window: its
coefficients are exact for exponents up to ``prec`` and unknown beyond.
Products are valid to ``min(N1 + m2, N2 + m1)`` where ``m1, m2`` are the
lowest exponents, which is tight.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import _expr
from .errors import NotAUnit, PrecisionError, SigmaMismatch
from .polys import Poly
from .ratfunc import RatFunc, SigmaSpec

G1, G2 = "G1", "G2"
Word = tuple  # tuple of generator labels, e.g. ("G2", "G1")

_ZERO = RatFunc(0)
_ONE = RatFunc(1)


@lru_cache(maxsize=200_000)
def _twist(sigma: SigmaSpec, f: RatFunc, j: int) -> RatFunc:
    return sigma.apply(f, j)


def _check_sigma(a, b):
    if a.sigma != b.sigma:
        raise SigmaMismatch(f"automorphisms differ: {a.sigma} vs {b.sigma}")


# ---------------------------------------------------------------------------
# skew polynomials


class SkewPoly:
    """Element of K[x; sigma] as a sparse map ``degree -> coefficient``."""

    __slots__ = ("coeffs", "sigma")

    def __init__(self, coeffs: Mapping[int, object] | Sequence, sigma: SigmaSpec):
        if not isinstance(coeffs, Mapping):
            coeffs = dict(enumerate(coeffs))
        clean = {}
        for n, c in coeffs.items():
            if n < 0:
                raise ValueError("skew polynomials have nonnegative degrees")
            c = RatFunc.coerce(c)
            if c:
                clean[int(n)] = c
        self.coeffs: dict[int, RatFunc] = dict(sorted(clean.items()))
        self.sigma = sigma

    @classmethod
    def x(cls, sigma: SigmaSpec) -> "SkewPoly":
        return cls({1: _ONE}, sigma)

    @classmethod
    def constant(cls, c, sigma: SigmaSpec) -> "SkewPoly":
        return cls({0: c}, sigma)

    @classmethod
    def parse(cls, text: str, sigma: SigmaSpec) -> "SkewPoly":
        """Parse text in ``s`` and ``x`` evaluated with the skew product.

        ``x*s`` therefore means ``sigma(s)*x``. Division is only allowed by
        nonzero elements of K and acts on the right.
        """
        symbols = {"s": cls.constant(RatFunc.parse("s"), sigma), "x": cls.x(sigma)}
        value = _expr.evaluate(text, symbols, lambda c: cls.constant(c, sigma))
        return value

    def _other(self, other) -> "SkewPoly":
        if isinstance(other, SkewPoly):
            _check_sigma(self, other)
            return other
        if isinstance(other, (int, Fraction, RatFunc, Poly)):
            return SkewPoly.constant(other, self.sigma)
        return NotImplemented

    @property
    def degree(self) -> int:
        return max(self.coeffs) if self.coeffs else -1

    @property
    def valuation(self) -> int:
        return min(self.coeffs) if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, n: int) -> RatFunc:
        return self.coeffs.get(n, _ZERO)

    def __eq__(self, other) -> bool:
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((tuple(self.coeffs.items()), self.sigma))

    def __repr__(self) -> str:
        return f"SkewPoly({str(self)!r}, {self.sigma})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(_term(c, n) for n, c in self.coeffs.items())

    def __neg__(self) -> "SkewPoly":
        return SkewPoly({n: -c for n, c in self.coeffs.items()}, self.sigma)

    def __add__(self, other) -> "SkewPoly":
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, _ZERO) + c
        return SkewPoly(out, self.sigma)

    def __radd__(self, other):
        return self + other

    def __sub__(self, other) -> "SkewPoly":
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "SkewPoly":
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, RatFunc] = {}
        for n, a in self.coeffs.items():
            for m, b in other.coeffs.items():
                out[n + m] = out.get(n + m, _ZERO) + a * _twist(self.sigma, b, n)
        return SkewPoly(out, self.sigma)

    def __rmul__(self, other):
        return self._other(other) * self

    def __pow__(self, k: int) -> "SkewPoly":
        if k < 0:
            raise ValueError("negative power of a skew polynomial")
        out = SkewPoly.constant(1, self.sigma)
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, other) -> "SkewPoly":
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        if other.degree != 0 or other.valuation != 0:
            raise ValueError("a skew polynomial can only be divided by a nonzero element of K")
        return self * SkewPoly.constant(other[0].inverse(), self.sigma)

    def __rtruediv__(self, other):
        return self._other(other) / self

    def to_series(self, prec: int) -> "SkewSeries":
        return SkewSeries.from_terms(self.coeffs, prec, self.sigma)


def skew_mul(p: SkewPoly, r: SkewPoly) -> SkewPoly:
    if p.sigma != r.sigma:
        raise SigmaMismatch(f"automorphisms differ: {p.sigma} vs {r.sigma}")
    return p * r


def _term(c: RatFunc, n: int) -> str:
    text = str(c)
    if n == 0:
        return text
    mono = "x" if n == 1 else f"x^{n}"
    if c == 1:
        return mono
    if " " in text or text.startswith("-"):
        text = f"({text})"
    return f"{text}*{mono}"


# ---------------------------------------------------------------------------
# truncated skew Laurent series


class SkewSeries:
    """Truncated element of K((x; sigma)): exact coefficients for ``start <= n <= prec``."""

    __slots__ = ("start", "coeffs", "prec", "sigma")

    def __init__(self, start: int, coeffs: Iterable, prec: int, sigma: SigmaSpec):
        cs = [RatFunc.coerce(c) for c in coeffs]
        cs = cs[: max(prec - start + 1, 0)]
        cs += [_ZERO] * (prec - start + 1 - len(cs))
        k = 0
        while k < len(cs) and cs[k].is_zero():
            k += 1
        if k == len(cs):
            self.start, self.coeffs = prec + 1, ()
        else:
            self.start, self.coeffs = start + k, tuple(cs[k:])
        self.prec = prec
        self.sigma = sigma

    @classmethod
    def from_terms(cls, terms: Mapping[int, object], prec: int, sigma: SigmaSpec) -> "SkewSeries":
        if not terms:
            return cls(prec + 1, (), prec, sigma)
        lo = min(terms)
        hi = max(prec, lo)
        return cls(lo, [terms.get(n, _ZERO) for n in range(lo, hi + 1)], prec, sigma)

    @classmethod
    def one(cls, prec: int, sigma: SigmaSpec) -> "SkewSeries":
        return cls(0, [_ONE], prec, sigma)

    @classmethod
    def monomial(cls, n: int, c, prec: int, sigma: SigmaSpec) -> "SkewSeries":
        return cls.from_terms({n: c}, prec, sigma)

    # access ---------------------------------------------------------------

    def is_zero(self) -> bool:
        """True when every coefficient in the valid window vanishes."""
        return not self.coeffs

    @property
    def valuation(self):
        return None if not self.coeffs else self.start

    def coefficient(self, n: int) -> RatFunc:
        if n > self.prec:
            raise PrecisionError(f"coefficient x^{n} is beyond the valid window", n)
        if n < self.start:
            return _ZERO
        return self.coeffs[n - self.start]

    def __getitem__(self, n: int) -> RatFunc:
        return self.coefficient(n)

    def terms(self) -> list[tuple[int, RatFunc]]:
        return [(self.start + i, c) for i, c in enumerate(self.coeffs) if c]

    def truncate(self, prec: int) -> "SkewSeries":
        if prec > self.prec:
            raise PrecisionError("cannot raise the precision of a truncated series", prec)
        return SkewSeries(self.start, self.coeffs, prec, self.sigma)

    def __eq__(self, other) -> bool:
        """Equality on the common valid window."""
        if not isinstance(other, SkewSeries):
            if isinstance(other, (int, Fraction, RatFunc)):
                other = SkewSeries.from_terms({0: other}, self.prec, self.sigma)
            else:
                return NotImplemented
        if self.sigma != other.sigma:
            return False
        n = min(self.prec, other.prec)
        return self.truncate(n).terms() == other.truncate(n).terms()

    __hash__ = None

    def __repr__(self) -> str:
        return f"SkewSeries({str(self)!r}, {self.sigma})"

    def __str__(self) -> str:
        body = " + ".join(_term(c, n) for n, c in self.terms())
        tail = f"O(x^{self.prec + 1})"
        return f"{body} + {tail}" if body else tail

    def to_json(self) -> list:
        return [[n, str(c.num), str(c.den)] for n, c in self.terms()]

    @classmethod
    def from_json(cls, data: Sequence, prec: int, sigma: SigmaSpec) -> "SkewSeries":
        terms = {int(n): RatFunc.parse(num) / RatFunc.parse(den) for n, num, den in data}
        return cls.from_terms(terms, prec, sigma)

    # arithmetic -----------------------------------------------------------

    def _other(self, other) -> "SkewSeries":
        if isinstance(other, SkewSeries):
            _check_sigma(self, other)
            return other
        if isinstance(other, SkewPoly):
            _check_sigma(self, other)
            return other.to_series(self.prec)
        if isinstance(other, (int, Fraction, RatFunc, Poly)):
            return SkewSeries.from_terms({0: other}, self.prec, self.sigma)
        return NotImplemented

    def __neg__(self) -> "SkewSeries":
        return SkewSeries(self.start, [-c for c in self.coeffs], self.prec, self.sigma)

    def __add__(self, other) -> "SkewSeries":
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        prec = min(self.prec, other.prec)
        lo = min(self.start, other.start)
        if lo > prec:
            return SkewSeries(prec + 1, (), prec, self.sigma)
        cs = []
        for n in range(lo, prec + 1):
            a = self.coeffs[n - self.start] if self.start <= n < self.start + len(self.coeffs) else _ZERO
            b = other.coeffs[n - other.start] if other.start <= n < other.start + len(other.coeffs) else _ZERO
            cs.append(a + b)
        return SkewSeries(lo, cs, prec, self.sigma)

    __radd__ = __add__

    def __sub__(self, other) -> "SkewSeries":
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "SkewSeries":
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        sigma = self.sigma
        prec = min(self.prec + other.start, other.prec + self.start)
        if not self.coeffs or not other.coeffs:
            return SkewSeries(prec + 1, (), prec, sigma)
        lo = self.start + other.start
        size = prec - lo + 1
        if size <= 0:
            return SkewSeries(prec + 1, (), prec, sigma)
        out = [_ZERO] * size
        for i, a in enumerate(self.coeffs[:size]):
            if not a:
                continue
            n = self.start + i
            for j, b in enumerate(other.coeffs[: size - i]):
                if b:
                    out[i + j] = out[i + j] + a * _twist(sigma, b, n)
        return SkewSeries(lo, out, prec, sigma)

    def __rmul__(self, other) -> "SkewSeries":
        return self._other(other) * self

    def __pow__(self, k: int) -> "SkewSeries":
        if k < 0:
            return invert(self) ** (-k)
        out = SkewSeries.one(self.prec, self.sigma)
        for _ in range(k):
            out = out * self
        return out

    def left_scale(self, c) -> "SkewSeries":
        """``c * self`` for ``c`` in K."""
        c = RatFunc.coerce(c)
        return SkewSeries(self.start, [c * a for a in self.coeffs], self.prec, self.sigma)

    def apply_sigma(self, j: int = 1) -> "SkewSeries":
        """Coefficientwise ``sigma**j`` (the extension of sigma fixing x)."""
        return SkewSeries(self.start, [_twist(self.sigma, c, j) for c in self.coeffs], self.prec, self.sigma)


def invert(f: SkewSeries) -> SkewSeries:
    """Two-sided inverse by the twisted geometric recursion.

    Writing ``f = h * x^v`` with ``h_0 != 0``, the right inverse ``g`` of ``h``
    satisfies ``g_n = -h_0^{-1} sum_{i>=1} h_i sigma^i(g_{n-i})``; then
    ``f^{-1} = x^{-v} g``. The result is valid to ``prec - 2v``.
    """
    if not f.coeffs:
        raise NotAUnit(f"series {f} has no nonzero coefficient in its window")
    sigma = f.sigma
    v = f.start
    h = f.coeffs
    rel = f.prec - v
    h0inv = h[0].inverse()
    g = [h0inv]
    for n in range(1, rel + 1):
        acc = _ZERO
        for i in range(1, min(n, len(h) - 1) + 1):
            if h[i]:
                acc = acc + h[i] * _twist(sigma, g[n - i], i)
        g.append(-(h0inv * acc))
    if v:
        g = [_twist(sigma, c, -v) for c in g]
    return SkewSeries(-v, g, rel - v, sigma)


series_invert = invert


def expand_right_fraction(p: SkewPoly, r: SkewPoly, prec: int) -> SkewSeries:
    """Series of ``p * r^{-1}`` valid to ``x^prec``."""
    _check_sigma(p, r)
    if r.is_zero():
        raise ZeroDivisionError("right fraction with zero denominator")
    if p.is_zero():
        return SkewSeries(prec + 1, (), prec, p.sigma)
    vr, vp = r.valuation, p.valuation
    rinv = invert(r.to_series(prec - vp + 2 * vr))
    out = p.to_series(prec + vr) * rinv
    return out.truncate(prec)


def expand_left_fraction(r: SkewPoly, p: SkewPoly, prec: int) -> SkewSeries:
    """Series of ``r^{-1} * p``: expand the inverse, then multiply."""
    _check_sigma(p, r)
    vr, vp = r.valuation, p.valuation
    rinv = invert(r.to_series(prec - vp + 2 * vr))
    return (rinv * p.to_series(prec + vr)).truncate(prec)


# ---------------------------------------------------------------------------
# words in two generators


def word_key(w: Word):
    return (len(w), tuple(w))


def all_words(max_len: int, letters: Sequence[str] = (G1, G2)) -> list[Word]:
    """All nonempty words of length at most ``max_len`` in degree-lexicographic order."""
    out: list[Word] = []
    layer: list[Word] = [()]
    for _ in range(max_len):
        layer = [w + (a,) for w in layer for a in letters]
        out.extend(layer)
    return sorted(out, key=word_key)


def word_str(w: Word) -> str:
    return "·".join(w) if w else "1"


def word_to_series(w: Word, gens: Mapping[str, SkewSeries], prec: int, sigma: SigmaSpec | None = None) -> SkewSeries:
    """Product of generator series in word order, valid to ``x^prec``."""
    for letter in set(w):
        if gens[letter].prec < prec:
            raise PrecisionError(f"generator {letter} is valid only to x^{gens[letter].prec}", prec)
    if sigma is None:
        sigma = next(iter(gens.values())).sigma
    out = SkewSeries.one(prec, sigma)
    for letter in w:
        out = out * gens[letter]
    if out.prec < prec:
        raise PrecisionError(f"word {word_str(w)} loses precision", prec + (prec - out.prec))
    return out.truncate(prec)
