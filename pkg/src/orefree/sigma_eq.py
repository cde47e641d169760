"""The additive difference equation ``sigma(u) - u = f`` over Q(s).

The polynomial part of ``f`` is handled by a triangular solve. Pole terms
are grouped into sigma-orbits of irreducible denominator factors; inside
an orbit every term ``a / sigma^m(p)^k`` is congruent, modulo the image of
``sigma - 1``, to ``sigma^{-m}(a) / p^k`` over the orbit's leftmost factor
``p``. The equation is solvable exactly when every telescoped residue
vanishes, and the telescoping sums assemble ``u``.

For a dilation ``s -> q*s`` the factor ``s`` is fixed up to a scalar, so
the Laurent part in ``s`` is solved termwise: ``s^n`` with ``n != 0`` is
``sigma - 1`` of ``s^n / (q^n - 1)``, while a nonzero constant term can
never be reached.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polys import Poly
from .ratfunc import RatFunc, SigmaSpec, adic_terms, dispersion

SOLVABLE = "SOLVABLE"
UNSOLVABLE = "UNSOLVABLE"
HYPOTHESIS_HOLDS = "HYPOTHESIS_HOLDS"
FAILS = "FAILS"


@dataclass(frozen=True)
class DifferenceVerdict:
    status: str
    u: RatFunc | None = None
    obstruction: dict | None = None

    @property
    def solvable(self) -> bool:
        return self.status == SOLVABLE

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.u is not None:
            out["u"] = str(self.u)
        if self.obstruction is not None:
            out["obstruction"] = self.obstruction
        return out


@dataclass(frozen=True)
class HypothesisVerdict:
    status: str
    u: RatFunc | None = None
    e: Fraction | None = None
    detail: DifferenceVerdict | None = None

    @property
    def holds(self) -> bool:
        return self.status == HYPOTHESIS_HOLDS

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.status == FAILS:
            out["u"] = str(self.u)
            out["e"] = str(self.e)
        if self.detail is not None and self.detail.obstruction is not None:
            out["obstruction"] = self.detail.obstruction
        return out


@dataclass(frozen=True)
class WeylVerdict:
    exists: bool
    u: RatFunc | None = None

    def to_json(self) -> dict:
        out = {"status": "YES" if self.exists else "NO"}
        if self.u is not None:
            out["u"] = str(self.u)
        return out


def _difference(u: RatFunc, sigma: SigmaSpec) -> RatFunc:
    return sigma.apply(u, 1) - u


def _solve_polynomial_shift(p: Poly, c: Fraction) -> Poly:
    """Polynomial ``u`` without constant term and ``u(s + c) - u(s) = p``."""
    u = Poly([], p.var)
    rest = p
    while not rest.is_zero():
        m = rest.degree + 1
        mono = Poly.monomial(m, rest.lc / (m * c), p.var)
        u = u + mono
        rest = rest - (mono.shift(c) - mono)
    return u


def _orbits(factors: list[Poly], sigma: SigmaSpec) -> list[tuple[Poly, dict]]:
    """Group irreducible factors into sigma-orbits.

    Each orbit is ``(p, {factor: m})`` with ``factor`` proportional to
    ``sigma^m(p)``, ``m >= 0`` and ``p`` the member with ``m = 0``.
    """
    groups: list[tuple[Poly, dict]] = []
    for fac in factors:
        for rep, members in groups:
            if rep.degree != fac.degree:
                continue
            hits = dispersion(rep, fac, sigma)
            if hits:
                members[fac] = -min(hits)
                break
        else:
            groups.append((fac, {fac: 0}))
    out = []
    for _, members in groups:
        low = min(members.values())
        start = next(f for f, m in members.items() if m == low)
        out.append((start, {f: m - low for f, m in members.items()}))
    return out


def solve_additive(f, sigma: SigmaSpec) -> DifferenceVerdict:
    """Decide ``sigma(u) - u = f`` for ``u`` in Q(s).

    A SOLVABLE verdict carries ``u`` normalized to zero constant term in
    its polynomial part; it has been checked by substitution. An
    UNSOLVABLE verdict names the obstruction: the orbit whose telescoped
    residue is nonzero, or (for a dilation) the unreachable constant term.
    """
    f = RatFunc.coerce(f)
    poly, terms = adic_terms(f)
    var = f.var
    s = Poly.gen(var)
    u = RatFunc(0, Poly([1], var))

    if sigma.kind == "shift":
        u = u + RatFunc(_solve_polynomial_shift(poly, sigma.param))
    else:
        q = sigma.param
        laurent = {n: c for n, c in enumerate(poly.coeffs) if c}
        pole_terms = []
        for fac, k, a in terms:
            if fac == s:
                laurent[-k] = laurent.get(-k, Fraction(0)) + a.coeffs[0]
            else:
                pole_terms.append((fac, k, a))
        terms = pole_terms
        if laurent.get(0, 0):
            return DifferenceVerdict(UNSOLVABLE, obstruction={
                "kind": "constant-term",
                "constant": str(laurent[0]),
                "reason": "sigma(u) - u has zero constant term in s for every Laurent polynomial u",
            })
        for n, c in laurent.items():
            if n:
                mono = RatFunc(Poly.monomial(n, 1, var)) if n > 0 else RatFunc(1, Poly.monomial(-n, 1, var))
                u = u + mono * RatFunc(c / (q ** n - 1))

    factors = sorted({fac for fac, _, _ in terms}, key=lambda p: (p.degree, p.coeffs))
    for rep, members in _orbits(factors, sigma):
        residue = RatFunc(0, Poly([1], var))
        for fac, k, a in terms:
            if fac not in members:
                continue
            m = members[fac]
            g = RatFunc(a, fac ** k)
            h = sigma.apply(g, -m)
            residue = residue + h
            for i in range(m):
                u = u + sigma.apply(h, i)
        if residue:
            _, left = adic_terms(residue)
            return DifferenceVerdict(UNSOLVABLE, obstruction={
                "kind": "pole-orbit",
                "representative": str(rep),
                "orbit": [[str(fac), m] for fac, m in sorted(members.items(), key=lambda fm: fm[1])],
                "residue": str(residue),
                "residue_terms": [[k, str(a)] for _, k, a in sorted(left, key=lambda t: -t[1])],
            })

    quo, _ = divmod(u.num, u.den)
    if quo[0]:
        u = u - RatFunc(quo[0])
    if _difference(u, sigma) != f:
        raise ArithmeticError(f"solver produced u = {u} that fails sigma(u) - u = {f}")
    return DifferenceVerdict(SOLVABLE, u=u)


def thm23_hypothesis(b, sigma: SigmaSpec) -> HypothesisVerdict:
    """Is ``sigma(u) - u = b + e`` unsolvable for every constant ``e``?

    The fixed field of sigma is Q. Constants only touch the constant term
    of the polynomial part, so ``e`` is chosen to cancel it: for a shift
    any constant is reachable anyway, for a dilation none is.
    """
    b = RatFunc.coerce(b)
    quo, _ = divmod(b.num, b.den)
    e = -quo[0]
    verdict = solve_additive(b + RatFunc(e), sigma)
    if verdict.solvable:
        lhs = _difference(verdict.u, sigma)
        if lhs != b + RatFunc(e):
            raise ArithmeticError("hypothesis witness failed substitution")
        return HypothesisVerdict(FAILS, verdict.u, e, verdict)
    return HypothesisVerdict(HYPOTHESIS_HOLDS, detail=verdict)


def weyl_element_exists(sigma: SigmaSpec) -> WeylVerdict:
    """Is there ``u`` in Q(s) with ``sigma(u) = u + 1``?"""
    verdict = solve_additive(RatFunc(1), sigma)
    return WeylVerdict(verdict.solvable, verdict.u)
