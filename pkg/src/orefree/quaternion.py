"""Hamilton quaternions over Q and the rational function ring H(t).

``t`` is a central indeterminate. Fractions in H(t) are kept with a
central denominator: a quaternion polynomial ``n(t)`` is inverted as
``conj(n) / N(n)`` where ``N(n) = n * conj(n)`` has rational coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import _expr
from .errors import PoleError
from .linalg import nullspace, rank, rref
from .polys import Poly, _frac, _fmt_frac, gcd

IN_ZT = "IN_Zt"
NOT_COMMUTING = "NOT_COMMUTING"
COMMUTING_BUT_OUTSIDE = "COMMUTING_BUT_OUTSIDE"

_UNITS = ("", "i", "j", "k")


class Quaternion:
    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a, self.b, self.c, self.d = _frac(a), _frac(b), _frac(c), _frac(d)

    @classmethod
    def parse(cls, text: str) -> "Quaternion":
        units = {"i": cls(0, 1), "j": cls(0, 0, 1), "k": cls(0, 0, 0, 1)}
        return cls.coerce(_expr.evaluate(text, units, cls))

    @classmethod
    def coerce(cls, x) -> "Quaternion":
        if isinstance(x, Quaternion):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        return cls(x)

    @property
    def parts(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def is_zero(self) -> bool:
        return not any(self.parts)

    def is_central(self) -> bool:
        return not (self.b or self.c or self.d)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        try:
            other = Quaternion.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"Quaternion({self})"

    def __str__(self) -> str:
        pieces = []
        for c, u in zip(self.parts, _UNITS):
            if not c:
                continue
            mag = _fmt_frac(abs(c))
            body = mag if not u else (u if mag == "1" else f"{mag}*{u}")
            pieces.append(("-" if c < 0 else "+", body))
        if not pieces:
            return "0"
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __add__(self, other) -> "Quaternion":
        o = Quaternion.coerce(other)
        return Quaternion(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __sub__(self, other) -> "Quaternion":
        return self + (-Quaternion.coerce(other))

    def __rsub__(self, other) -> "Quaternion":
        return Quaternion.coerce(other) - self

    def __mul__(self, other) -> "Quaternion":
        if isinstance(other, (QuatPoly, QuatRat)):
            return NotImplemented
        o = Quaternion.coerce(other)
        a1, b1, c1, d1 = self.parts
        a2, b2, c2, d2 = o.parts
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, other) -> "Quaternion":
        return Quaternion.coerce(other) * self

    def conj(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm(self) -> Fraction:
        return self.a ** 2 + self.b ** 2 + self.c ** 2 + self.d ** 2

    def trace(self) -> Fraction:
        return 2 * self.a

    def inverse(self) -> "Quaternion":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("the zero quaternion has no inverse")
        c = self.conj()
        return Quaternion(c.a / n, c.b / n, c.c / n, c.d / n)

    def __truediv__(self, other) -> "Quaternion":
        if isinstance(other, (QuatPoly, QuatRat)):
            return NotImplemented
        return self * Quaternion.coerce(other).inverse()

    def __rtruediv__(self, other) -> "Quaternion":
        return Quaternion.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "Quaternion":
        if n < 0:
            return self.inverse() ** (-n)
        out = Quaternion(1)
        for _ in range(n):
            out = out * self
        return out


def quat_arith(p, q, op: str) -> Quaternion:
    p, q = Quaternion.coerce(p), Quaternion.coerce(q)
    if op == "+":
        return p + q
    if op in ("-", "−"):
        return p - q
    if op in ("*", "×"):
        return p * q
    if op in ("/", "÷"):
        return p / q
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# polynomials and fractions in a central t


class QuatPoly:
    """Polynomial in central ``t`` with quaternion coefficients, ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Quaternion.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs: tuple[Quaternion, ...] = tuple(cs)

    @classmethod
    def from_poly(cls, p: Poly) -> "QuatPoly":
        return cls([Quaternion(c) for c in p.coeffs])

    @classmethod
    def coerce(cls, x) -> "QuatPoly":
        if isinstance(x, QuatPoly):
            return x
        if isinstance(x, Poly):
            return cls.from_poly(x)
        return cls([Quaternion.coerce(x)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, n: int) -> Quaternion:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else Quaternion()

    def __eq__(self, other) -> bool:
        try:
            other = QuatPoly.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"QuatPoly({self})"

    def __str__(self) -> str:
        terms = []
        for n, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            body = str(c)
            if n:
                mono = "t" if n == 1 else f"t^{n}"
                if body == "1":
                    body = mono
                elif body == "-1":
                    body = f"-{mono}"
                elif " " in body.lstrip("-"):
                    body = f"({body})*{mono}"
                else:
                    body = f"{body}*{mono}"
            terms.append(body)
        if not terms:
            return "0"
        out = terms[0]
        for body in terms[1:]:
            out += f" - {body[1:]}" if body.startswith("-") else f" + {body}"
        return out

    def __neg__(self) -> "QuatPoly":
        return QuatPoly([-c for c in self.coeffs])

    def __add__(self, other) -> "QuatPoly":
        if isinstance(other, QuatRat):
            return NotImplemented
        o = QuatPoly.coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return QuatPoly([self[i] + o[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other) -> "QuatPoly":
        if isinstance(other, QuatRat):
            return NotImplemented
        return self + (-QuatPoly.coerce(other))

    def __rsub__(self, other) -> "QuatPoly":
        return QuatPoly.coerce(other) - self

    def __mul__(self, other) -> "QuatPoly":
        if isinstance(other, QuatRat):
            return NotImplemented
        o = QuatPoly.coerce(other)
        if self.is_zero() or o.is_zero():
            return QuatPoly()
        out = [Quaternion() for _ in range(len(self.coeffs) + len(o.coeffs) - 1)]
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(o.coeffs):
                out[i + j] = out[i + j] + x * y
        return QuatPoly(out)

    def __rmul__(self, other) -> "QuatPoly":
        return QuatPoly.coerce(other) * self

    def __pow__(self, n: int) -> "QuatPoly":
        out = QuatPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def conj(self) -> "QuatPoly":
        return QuatPoly([c.conj() for c in self.coeffs])

    def components(self) -> tuple[Poly, Poly, Poly, Poly]:
        """The four rational polynomials with ``self = p0 + p1 i + p2 j + p3 k``."""
        return tuple(Poly([c.parts[m] for c in self.coeffs], "t") for m in range(4))

    def norm_poly(self) -> Poly:
        """``self * conj(self)``, which is central."""
        prod = self * self.conj()
        comps = prod.components()
        assert all(c.is_zero() for c in comps[1:]), "norm of a quaternion polynomial is central"
        return comps[0]

    def is_central(self) -> bool:
        return all(c.is_central() for c in self.coeffs)

    def __call__(self, alpha) -> Quaternion:
        acc = Quaternion()
        for c in reversed(self.coeffs):
            acc = acc * alpha + c
        return acc


class QuatRat:
    """``num(t) / den(t)`` in H(t) with ``den`` rational, monic and coprime to ``num``."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = QuatPoly.coerce(num)
        den = Poly([1], "t") if den is None else (den if isinstance(den, Poly) else Poly([den], "t")).with_var("t")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in H(t)")
        if num.is_zero():
            den = Poly([1], "t")
        else:
            g = den
            for comp in num.components():
                if not comp.is_zero():
                    g = gcd(g, comp)
            if not g.is_constant():
                num = _div_components(num, g)
                den = den // g
            lc = den.lc
            if lc != 1:
                inv = 1 / lc
                num = QuatPoly([c * inv for c in num.coeffs])
                den = den.monic()
        self.num, self.den = num, den

    @classmethod
    def parse(cls, text: str) -> "QuatRat":
        symbols = {
            "i": cls(Quaternion(0, 1)), "j": cls(Quaternion(0, 0, 1)), "k": cls(Quaternion(0, 0, 0, 1)),
            "t": cls(QuatPoly([0, 1])),
        }
        return cls.coerce(_expr.evaluate(text, symbols, lambda c: cls(Quaternion(c))))

    @classmethod
    def coerce(cls, x) -> "QuatRat":
        if isinstance(x, QuatRat):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        if isinstance(x, Poly):
            return cls(QuatPoly.from_poly(x))
        return cls(QuatPoly.coerce(x))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        try:
            other = QuatRat.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"QuatRat({self})"

    def __str__(self) -> str:
        if self.den.is_constant():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __neg__(self) -> "QuatRat":
        return QuatRat(-self.num, self.den)

    def __add__(self, other) -> "QuatRat":
        o = QuatRat.coerce(other)
        return QuatRat(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other) -> "QuatRat":
        return self + (-QuatRat.coerce(other))

    def __rsub__(self, other) -> "QuatRat":
        return QuatRat.coerce(other) - self

    def __mul__(self, other) -> "QuatRat":
        o = QuatRat.coerce(other)
        return QuatRat(self.num * o.num, self.den * o.den)

    def __rmul__(self, other) -> "QuatRat":
        return QuatRat.coerce(other) * self

    def inverse(self) -> "QuatRat":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in H(t)")
        return QuatRat(self.num.conj() * self.den, self.num.norm_poly())

    def __truediv__(self, other) -> "QuatRat":
        return self * QuatRat.coerce(other).inverse()

    def __rtruediv__(self, other) -> "QuatRat":
        return QuatRat.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "QuatRat":
        if n < 0:
            return self.inverse() ** (-n)
        out = QuatRat(1)
        for _ in range(n):
            out = out * self
        return out

    def evaluate(self, alpha) -> Quaternion:
        alpha = _frac(alpha)
        d = self.den(alpha)
        if d == 0:
            raise PoleError(self.den, alpha)
        return self.num(alpha) * (1 / d)


def _div_components(num: QuatPoly, g: Poly) -> QuatPoly:
    comps = [c.with_var("t").exact_div(g) if not c.is_zero() else c for c in num.components()]
    width = max(len(c.coeffs) for c in comps)
    return QuatPoly([Quaternion(*(c[n] for c in comps)) for n in range(width)])


# ---------------------------------------------------------------------------
# centralizers


def _vector(q: Quaternion) -> list[Fraction]:
    return list(q.parts)


def centralizer_basis(a) -> list[Quaternion]:
    """Q-basis of ``{x : a x = x a}`` in reduced echelon form."""
    a = Quaternion.coerce(a)
    basis = [Quaternion(1), Quaternion(0, 1), Quaternion(0, 0, 1), Quaternion(0, 0, 0, 1)]
    cols = [_vector(a * e - e * a) for e in basis]
    matrix = [[cols[c][r] for c in range(4)] for r in range(4)]
    reduced, _ = rref(nullspace(matrix, 4))
    return [Quaternion(*v) for v in reduced]


def in_span(q: Quaternion, basis: Sequence[Quaternion]) -> bool:
    vecs = [_vector(b) for b in basis]
    return rank(vecs + [_vector(q)]) == rank(vecs) if vecs else q.is_zero()


@dataclass(frozen=True)
class CentralizerCheck:
    status: str
    basis: tuple = ()
    offending: tuple = ()  # (power of t, coefficient) outside the centralizer

    def to_json(self) -> dict:
        out = {"status": self.status, "basis": [str(b) for b in self.basis]}
        if self.offending:
            out["offending"] = [[n, str(c)] for n, c in self.offending]
        return out


def verify_centralizer_in_Dt(w, a) -> CentralizerCheck:
    """Does ``w`` commute with ``a``, and if so are its coefficients in ``C(a; H)``?

    Commuting elements of H(t) always have coefficients in ``C(a; H)``, so
    ``COMMUTING_BUT_OUTSIDE`` signals a defect in the arithmetic.
    """
    w, a = QuatRat.coerce(w), Quaternion.coerce(a)
    basis = tuple(centralizer_basis(a))
    if w * a != a * w:
        return CentralizerCheck(NOT_COMMUTING, basis)
    bad = tuple((n, c) for n, c in enumerate(w.num.coeffs) if not in_span(c, basis))
    if bad:
        return CentralizerCheck(COMMUTING_BUT_OUTSIDE, basis, bad)
    return CentralizerCheck(IN_ZT, basis)


# ---------------------------------------------------------------------------
# clearing a denominator and the embedding into H((t))


@dataclass(frozen=True)
class ClearedDenominator:
    p: Poly
    cofactor: QuatPoly

    def to_json(self) -> dict:
        return {"p": str(self.p), "cofactor": str(self.cofactor)}


def clear_left_denominator(a) -> ClearedDenominator:
    """``p(t) = 1 - tr(a) t + N(a) t^2`` and ``c(t) = 1 - conj(a) t`` with ``p(t) (1 - a t)^{-1} = c(t)``."""
    a = Quaternion.coerce(a)
    p = Poly([1, -a.trace(), a.norm()], "t")
    cofactor = QuatPoly([1, -a.conj()])
    factor = QuatPoly([1, -a])
    if factor * cofactor != QuatPoly.from_poly(p) or cofactor * factor != QuatPoly.from_poly(p):
        raise ArithmeticError(f"(1 - a t)(1 - conj(a) t) != p(t) for a = {a}")
    if QuatRat(p) * QuatRat(factor).inverse() != QuatRat(cofactor):
        raise ArithmeticError("p(t) (1 - a t)^{-1} is not the cofactor")
    return ClearedDenominator(p, cofactor)


@dataclass(frozen=True)
class QuatSeries:
    start: int
    coeffs: tuple  # Quaternion coefficients of t^start .. t^prec
    prec: int

    def coefficient(self, n: int) -> Quaternion:
        if n > self.prec:
            raise ValueError(f"t^{n} is beyond the valid window")
        k = n - self.start
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Quaternion()

    def __str__(self) -> str:
        body = QuatPoly(self.coeffs)
        text = str(body) if self.start == 0 else f"t^{self.start}*({body})"
        return f"{text} + O(t^{self.prec + 1})"

    def to_json(self) -> list:
        return [[self.start + n, str(c)] for n, c in enumerate(self.coeffs) if c]


def embed_series(w, prec: int, *, laurent: bool = False) -> QuatSeries:
    """Coefficients of ``w`` in H((t)) up to ``t^prec``.

    The denominator is central, so its inverse is an ordinary power
    series. A denominator vanishing at ``t = 0`` raises PoleError unless
    ``laurent`` is set, in which case the series starts at a negative
    power of ``t``.
    """
    w = QuatRat.coerce(w)
    den = w.den
    v = den.valuation()
    if v > 0 and not laurent:
        raise PoleError(den, Fraction(0))
    unit = Poly(den.coeffs[v:], "t")
    length = prec + v + 1
    inv = [Fraction(0)] * length
    inv[0] = 1 / unit[0]
    for n in range(1, length):
        acc = sum((unit[i] * inv[n - i] for i in range(1, min(n, unit.degree) + 1)), Fraction(0))
        inv[n] = -acc * inv[0]
    coeffs = []
    for n in range(length):
        acc = Quaternion()
        for i in range(min(n, w.num.degree) + 1):
            acc = acc + w.num[i] * inv[n - i]
        coeffs.append(acc)
    return QuatSeries(-v, tuple(coeffs), prec)
