"""Rational functions over Q, the automorphisms acting on them, and the
commutative machinery built on top: partial fractions, dispersion of a
pair of polynomials under an automorphism, and evaluation at a point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import _expr
from .errors import ParseError, PoleError
from .polys import Poly, factor, gcd, interpolate, rational_roots, resultant, xgcd


def _wrap(text: str) -> str:
    if any(ch in text for ch in " +-*/") and not text.replace("^", "").isalnum():
        return f"({text})"
    return text


class RatFunc:
    """Reduced quotient of two polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        if not isinstance(num, Poly):
            var = den.var if isinstance(den, Poly) else "s"
            num = Poly([num], var)
        if den is None:
            den = Poly([1], num.var)
        elif not isinstance(den, Poly):
            den = Poly([den], num.var)
        if num.var != den.var:
            if num.is_constant():
                num = num.with_var(den.var)
            elif den.is_constant():
                den = den.with_var(num.var)
            else:
                raise ValueError(f"variable mismatch: {num.var} vs {den.var}")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly([1], num.var)
            else:
                g = gcd(num, den)
                if not g.is_constant():
                    num, den = num // g, den // g
                lc = den.lc
                if lc != 1:
                    num, den = num * (1 / lc), den.monic()
        self.num: Poly = num
        self.den: Poly = den

    @classmethod
    def parse(cls, text: str, var: str = "s") -> "RatFunc":
        """Parse infix syntax such as ``1/s`` or ``(s^2-s)/2``."""
        gen = cls(Poly.gen(var))
        return cls.coerce(_expr.evaluate(text, {var: gen}, lambda c: cls(Poly([c], var))), var)

    @classmethod
    def coerce(cls, value, var: str = "s") -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, Poly):
            return cls(value)
        if isinstance(value, (int, Fraction)):
            return cls(Poly([value], var))
        if isinstance(value, str):
            return cls.parse(value, var)
        raise TypeError(f"cannot interpret {type(value).__name__} as a rational function")

    @property
    def var(self) -> str:
        return self.num.var if not self.num.is_constant() else self.den.var

    def _other(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, Poly)):
            return RatFunc.coerce(other, self.var)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0]

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFunc({str(self)!r})"

    def __str__(self) -> str:
        if self.den.is_constant():
            return str(self.num)
        return f"{_wrap(str(self.num))}/{_wrap(str(self.den))}"

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _reduced=True)

    def __add__(self, other) -> "RatFunc":
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        g = gcd(self.den, other.den)
        if g.is_constant():
            return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den, _reduced=True)
        bd, dd = self.den // g, other.den // g
        return RatFunc(self.num * dd + other.num * bd, self.den * dd)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other) -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatFunc(Poly([], self.var))
            return RatFunc(self.num * other, self.den, _reduced=True)
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc(Poly([], self.var))
        g1 = gcd(self.num, other.den)
        g2 = gcd(other.num, self.den)
        n1, d2 = (self.num // g1, other.den // g1) if not g1.is_constant() else (self.num, other.den)
        n2, d1 = (other.num // g2, self.den // g2) if not g2.is_constant() else (other.num, self.den)
        den = d1 * d2
        num = n1 * n2
        lc = den.lc
        if lc != 1:
            num, den = num * (1 / lc), den.monic()
        return RatFunc(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other) -> "RatFunc":
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError(f"division of {self} by zero")
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return RatFunc.coerce(other, self.var) / self

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _reduced=True)

    def __call__(self, alpha):
        return evaluate_at(self, alpha)

    def compose_poly(self, p: Poly) -> "RatFunc":
        """Substitute the polynomial ``p`` for the variable."""
        return RatFunc(self.num(p), self.den(p))


def ratfunc_arith(a, b, op: str) -> RatFunc:
    """Dispatch one of ``+ - * /`` (``×``/``÷`` accepted) on rational functions."""
    a, b = RatFunc.coerce(a), RatFunc.coerce(b)
    if op == "+":
        return a + b
    if op in ("-", "−"):
        return a - b
    if op in ("*", "×"):
        return a * b
    if op in ("/", "÷"):
        return a / b
    raise ValueError(f"unknown operator {op!r}")


def evaluate_at(f: RatFunc, alpha) -> Fraction:
    """Value of ``f`` at a rational point; raises :class:`PoleError` at a pole."""
    alpha = Fraction(alpha)
    d = f.den(alpha)
    if d == 0:
        raise PoleError(f.den, alpha)
    return f.num(alpha) / d


# ---------------------------------------------------------------------------
# automorphisms of Q(s)


@dataclass(frozen=True)
class SigmaSpec:
    """A Q-automorphism of Q(s): ``shift`` (s -> s + c) or ``dilation`` (s -> q*s)."""

    kind: str
    param: Fraction

    def __post_init__(self):
        object.__setattr__(self, "param", Fraction(self.param))
        if self.kind == "shift":
            if self.param == 0:
                raise ValueError("shift amount must be nonzero")
        elif self.kind == "dilation":
            if self.param in (0, 1, -1):
                raise ValueError(f"dilation factor {self.param} is not allowed (need q not in {{0, 1, -1}})")
        else:
            raise ValueError(f"unknown automorphism kind {self.kind!r}")

    @classmethod
    def shift(cls, c=1) -> "SigmaSpec":
        return cls("shift", Fraction(c))

    @classmethod
    def dilation(cls, q) -> "SigmaSpec":
        return cls("dilation", Fraction(q))

    @classmethod
    def parse(cls, text: str) -> "SigmaSpec":
        """Parse ``shift:c`` or ``dilation:q`` (``q`` may be an alias of ``dilation``)."""
        kind, sep, value = text.partition(":")
        kind = kind.strip().lower()
        if not sep:
            raise ParseError(f"automorphism must look like 'shift:1' or 'dilation:2', got {text!r}")
        kind = {"q": "dilation", "dilate": "dilation"}.get(kind, kind)
        try:
            param = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad automorphism parameter {value!r}") from None
        try:
            return cls(kind, param)
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def __str__(self) -> str:
        p = self.param
        return f"{self.kind}:{p.numerator if p.denominator == 1 else p}"

    @property
    def fixed_field_note(self) -> str:
        return "Q (constants): the automorphism has infinite order on Q(s)"

    def inverse(self) -> "SigmaSpec":
        if self.kind == "shift":
            return SigmaSpec("shift", -self.param)
        return SigmaSpec("dilation", 1 / self.param)

    def apply_poly(self, p: Poly, j: int = 1) -> Poly:
        if j == 0 or p.is_constant():
            return p
        if self.kind == "shift":
            return p.shift(j * self.param)
        return p.scale(self.param ** j)

    def apply(self, f, j: int = 1):
        """``sigma**j`` applied to a rational function (or polynomial)."""
        if isinstance(f, Poly):
            return self.apply_poly(f, j)
        if isinstance(f, (int, Fraction)):
            return f
        if j == 0 or f.is_constant():
            return f
        num, den = self.apply_poly(f.num, j), self.apply_poly(f.den, j)
        lc = den.lc
        if lc != 1:
            num, den = num * (1 / lc), den.monic()
        return RatFunc(num, den, _reduced=True)


def sigma_apply(f, sigma: SigmaSpec, j: int = 1) -> RatFunc:
    return sigma.apply(RatFunc.coerce(f), j)


# ---------------------------------------------------------------------------
# partial fractions


class PartialFractions(NamedTuple):
    poly_part: Poly
    terms: list  # [(irreducible monic factor, multiplicity, numerator)]

    def recombine(self) -> RatFunc:
        total = RatFunc(self.poly_part)
        for fac, mult, num in self.terms:
            total = total + RatFunc(num, fac ** mult)
        return total


def partial_fractions(f: RatFunc) -> PartialFractions:
    """Split ``f`` into polynomial part plus one proper term per prime-power denominator factor."""
    quo, rem = divmod(f.num, f.den)
    if f.den.is_constant():
        return PartialFractions(quo, [])
    _, factors = factor(f.den)
    terms = []
    for fac, mult in factors:
        q = fac ** mult
        cof = f.den // q
        _, x, _ = xgcd(cof, q)
        terms.append((fac, mult, (rem * x) % q))
    return PartialFractions(quo, terms)


def adic_terms(f: RatFunc) -> tuple[Poly, list[tuple[Poly, int, Poly]]]:
    """Full partial fractions: ``f = P + sum a/fac**k`` with ``deg a < deg fac``.

    Terms with zero numerator are dropped.
    """
    pf = partial_fractions(f)
    out = []
    for fac, mult, num in pf.terms:
        # fac-adic expansion num = sum c_j fac^j  =>  num/fac^m = sum c_j / fac^(m-j)
        j = 0
        while num:
            num, c = divmod(num, fac)
            if c:
                out.append((fac, mult - j, c))
            j += 1
    return pf.poly_part, out


# ---------------------------------------------------------------------------
# dispersion


def _smallest_prime(n: int) -> int:
    n = abs(n)
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def _valuation(x: Fraction, p: int) -> int:
    v = 0
    num, den = abs(x.numerator), x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _strip_var_power(p: Poly) -> Poly:
    v = p.valuation()
    return Poly(p.coeffs[v:], p.var) if v > 0 else p


def dispersion(p: Poly, r: Poly, sigma: SigmaSpec) -> set[int]:
    """All integers ``j`` with ``gcd(p, sigma**j(r))`` nonconstant.

    For a shift the candidates are the integer roots of the resultant
    ``Res_s(p(s), r(s + j*c))`` as a polynomial in ``j``. For a dilation the
    power of ``s`` dividing both inputs is fixed by every ``sigma**j`` and is
    ignored; the remaining irreducible factors are matched through the
    ratio of their constant terms.
    """
    if p.is_zero() or r.is_zero():
        raise ValueError("dispersion of the zero polynomial")
    if p.is_constant() or r.is_constant():
        return set()
    if sigma.kind == "shift":
        bound = p.degree * r.degree
        js = list(range(bound + 1))
        vals = [resultant(p, sigma.apply_poly(r, j)) for j in js]
        if all(v == 0 for v in vals):
            raise ArithmeticError("resultant vanishes identically in j")
        res_j = interpolate(js, vals, var="j")
        cands = [int(x) for x in rational_roots(res_j) if x.denominator == 1]
    else:
        p, r = _strip_var_power(p), _strip_var_power(r)
        if p.is_constant() or r.is_constant():
            return set()
        q = sigma.param
        ell = _smallest_prime(q.numerator if abs(q.numerator) != 1 else q.denominator)
        vq = _valuation(q, ell)
        _, pf = factor(p)
        _, rf = factor(r)
        cands = []
        for P, _ in pf:
            for R, _ in rf:
                if P.degree != R.degree:
                    continue
                ratio = R[0] / P[0]
                num = _valuation(ratio, ell)
                if num % (P.degree * vq):
                    continue
                cands.append(num // (P.degree * vq))
    return {j for j in sorted(set(cands)) if not gcd(p, sigma.apply_poly(r, j)).is_constant()}
