"""Word products with denominators kept in factored form.

The certifier multiplies thousands of truncated series whose coefficients
are sums of many rational functions. Reducing every partial sum with a
polynomial gcd dominates the cost, so here a coefficient is held as

    num(s) / (d * prod P^e)

with ``num`` an integer polynomial, ``d`` a positive integer and every
``P`` a primitive integer polynomial with positive leading coefficient.
Whenever the generator denominators factor completely, the ``P`` are
irreducible; ``sigma`` maps irreducibles to irreducibles, so common
denominators are maxima of exponent tables and a sum costs only integer
polynomial products. Results are converted back to reduced ``RatFunc``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Mapping, Sequence

from .errors import PrecisionError, UnsupportedFactorization
from .polys import Poly, factor, squarefree_decomposition
from .ratfunc import RatFunc, SigmaSpec
from .skew import SkewSeries, word_key

IntPoly = tuple  # ascending integer coefficients, no trailing zeros


def _trim(a: list) -> IntPoly:
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _mul(a: IntPoly, b: IntPoly) -> IntPoly:
    if len(a) == 1:
        c = a[0]
        return tuple(c * y for y in b)
    if len(b) == 1:
        c = b[0]
        return tuple(c * y for y in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _taylor_shift(a: IntPoly, c: int) -> IntPoly:
    """``a(s + c)`` for an integer ``c``."""
    out = list(a)
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += c * out[j + 1]
    return tuple(out)


def _exact_quotient(a: IntPoly, p: IntPoly) -> IntPoly | None:
    """``a / p`` when ``p`` divides ``a`` in Z[s] (``p`` primitive), else None."""
    if len(a) < len(p):
        return None
    rem = list(a)
    dp = len(p) - 1
    lead = p[-1]
    quot = [0] * (len(a) - dp)
    for k in range(len(a) - 1, dp - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        q, r = divmod(c, lead)
        if r:
            return None
        quot[k - dp] = q
        for i in range(dp + 1):
            rem[k - dp + i] -= q * p[i]
    if any(rem[:dp]):
        return None
    return _trim(quot)


def _primitive(p: Poly) -> tuple[Fraction, IntPoly]:
    content, ints = p.primitive_int()
    return content, tuple(ints)


class Coef:
    """``num / (d * prod P^e)``; instances are treated as immutable."""

    __slots__ = ("num", "d", "den")

    def __init__(self, num: IntPoly, d: int, den: dict):
        self.num = num
        self.d = d
        self.den = den


class Kernel:
    """Caches for one automorphism: shifted factors and factor powers."""

    def __init__(self, sigma: SigmaSpec):
        self.sigma = sigma
        self.exact = True  # False once a denominator could not be split into irreducibles
        self._int_shift = sigma.kind == "shift" and Fraction(sigma.param).denominator == 1
        self._key_images: dict = {}
        self._powers: dict = {}
        self._twists: dict = {}

    # conversions ------------------------------------------------------------

    def from_ratfunc(self, f: RatFunc) -> Coef | None:
        if f.is_zero():
            return None
        scalar = Fraction(1)
        den: dict = {}
        if not f.den.is_constant():
            try:
                lc, parts = factor(f.den)
            except UnsupportedFactorization:
                self.exact = False
                lc, parts = f.den.lc, squarefree_decomposition(f.den.monic())
            scalar /= lc
            for fac, mult in parts:
                content, key = _primitive(fac)
                scalar /= content ** mult
                den[key] = den.get(key, 0) + mult
        else:
            scalar /= f.den.lc
        content, num = _primitive(f.num)
        scalar *= content
        return Coef(tuple(scalar.numerator * c for c in num), scalar.denominator, den)

    def to_ratfunc(self, c: Coef | None) -> RatFunc:
        if c is None:
            return RatFunc(0)
        den_int: IntPoly = (1,)
        for key, e in c.den.items():
            den_int = _mul(den_int, self._power(key, e))
        lead = den_int[-1]
        scale = c.d * lead
        num = Poly([Fraction(x, scale) for x in c.num])
        den = Poly([Fraction(x, lead) for x in den_int])
        return RatFunc(num, den, _reduced=self.exact)

    # sigma ------------------------------------------------------------------

    def _apply_num(self, num: IntPoly, j: int) -> tuple[Fraction, IntPoly]:
        if self._int_shift:
            return Fraction(1), _taylor_shift(num, int(self.sigma.param) * j)
        return _primitive(self.sigma.apply_poly(Poly(num), j))

    def _key_image(self, key: IntPoly, j: int) -> tuple[Fraction, IntPoly]:
        hit = self._key_images.get((key, j))
        if hit is None:
            if self._int_shift:
                img = _taylor_shift(key, int(self.sigma.param) * j)
                hit = (Fraction(1), img) if img[-1] > 0 else (Fraction(-1), tuple(-x for x in img))
            else:
                hit = _primitive(self.sigma.apply_poly(Poly(key), j))
            self._key_images[(key, j)] = hit
        return hit

    def twist(self, c: Coef | None, j: int) -> Coef | None:
        """``sigma**j`` of a coefficient, memoized per object."""
        if c is None or j == 0:
            return c
        hit = self._twists.get((id(c), j))
        if hit is not None:
            return hit[1]
        scalar, num = self._apply_num(c.num, j)
        den: dict = {}
        for key, e in c.den.items():
            kappa, img = self._key_image(key, j)
            scalar /= kappa ** e
            den[img] = den.get(img, 0) + e
        out = Coef(tuple(scalar.numerator * x for x in num), c.d * scalar.denominator, den)
        self._twists[(id(c), j)] = (c, out)
        return out

    # ring operations --------------------------------------------------------

    def _power(self, key: IntPoly, e: int) -> IntPoly:
        if e == 0:
            return (1,)
        hit = self._powers.get((key, e))
        if hit is None:
            hit = key if e == 1 else _mul(self._power(key, e - 1), key)
            self._powers[(key, e)] = hit
        return hit

    def product(self, a: Coef, b: Coef) -> Coef:
        den = dict(a.den)
        for key, e in b.den.items():
            den[key] = den.get(key, 0) + e
        return Coef(_mul(a.num, b.num), a.d * b.d, den)

    def total(self, terms: Sequence[Coef]) -> Coef | None:
        """Exact sum, reduced against the factor table."""
        if not terms:
            return None
        exps: dict = {}
        for t in terms:
            for key, e in t.den.items():
                if e > exps.get(key, 0):
                    exps[key] = e
        big_d = reduce(lcm, (t.d for t in terms), 1)
        acc: list = []
        for t in terms:
            num = t.num
            for key, e in exps.items():
                gap = e - t.den.get(key, 0)
                if gap:
                    num = _mul(num, self._power(key, gap))
            m = big_d // t.d
            if len(acc) < len(num):
                acc.extend([0] * (len(num) - len(acc)))
            for i, x in enumerate(num):
                acc[i] += m * x
        num = _trim(acc)
        if not num:
            return None
        den = {}
        for key, e in exps.items():
            while e:
                q = _exact_quotient(num, key)
                if q is None:
                    break
                num, e = q, e - 1
            if e:
                den[key] = e
        g = reduce(gcd, num, big_d)
        if g > 1:
            num, big_d = tuple(x // g for x in num), big_d // g
        return Coef(num, big_d, den)


class FastSeries:
    __slots__ = ("start", "coeffs", "prec")

    def __init__(self, start: int, coeffs: list, prec: int):
        self.start, self.coeffs, self.prec = start, coeffs, prec


def _from_series(kernel: Kernel, f: SkewSeries) -> FastSeries:
    return FastSeries(f.start, [kernel.from_ratfunc(c) for c in f.coeffs], f.prec)


def _to_series(kernel: Kernel, f: FastSeries, prec: int) -> SkewSeries:
    return SkewSeries(f.start, [kernel.to_ratfunc(c) for c in f.coeffs[: prec - f.start + 1]], prec, kernel.sigma)


def _multiply(kernel: Kernel, a: FastSeries, b: FastSeries) -> FastSeries:
    prec = min(a.prec + b.start, b.prec + a.start)
    lo = a.start + b.start
    size = prec - lo + 1
    if size <= 0 or not a.coeffs or not b.coeffs:
        return FastSeries(prec + 1, [], prec)
    buckets: list[list] = [[] for _ in range(size)]
    for i, x in enumerate(a.coeffs[:size]):
        if x is None:
            continue
        n = a.start + i
        for j, y in enumerate(b.coeffs[: size - i]):
            if y is not None:
                buckets[i + j].append(kernel.product(x, kernel.twist(y, n)))
    return FastSeries(lo, [kernel.total(t) for t in buckets], prec)


def expand_words_fast(words: Sequence[tuple], gens: Mapping[str, SkewSeries], prec: int, sigma: SigmaSpec,
                      threads: int = 1) -> dict[tuple, SkewSeries]:
    """Same contract as :func:`orefree.freeness.expand_words`, computed in factored form."""
    for label, g in gens.items():
        if g.prec < prec:
            raise PrecisionError(f"generator {label} is valid only to x^{g.prec}", prec)
    kernel = Kernel(sigma)
    fast_gens = {label: _from_series(kernel, g) for label, g in gens.items()}
    memo: dict[tuple, FastSeries] = {(): FastSeries(0, [Coef((1,), 1, {})], prec)}
    by_len: dict[int, set] = {}
    for w in words:
        for k in range(1, len(w) + 1):
            by_len.setdefault(k, set()).add(w[:k])

    def step(w):
        out = _multiply(kernel, memo[w[:-1]], fast_gens[w[-1]])
        if out.prec < prec:
            raise PrecisionError(f"word {'*'.join(w)} loses precision", 2 * prec - out.prec)
        return w, out

    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for k in sorted(by_len):
            layer = sorted(by_len[k], key=word_key)
            results = pool.map(step, layer) if pool else map(step, layer)
            memo.update(results)
    finally:
        if pool:
            pool.shutdown()
    return {w: _to_series(kernel, memo[w], prec) for w in words}
