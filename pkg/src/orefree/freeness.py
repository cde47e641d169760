"""Certificates of linear independence for words in two skew-rational generators.

The trusted path is exact: every word in the generators is expanded into a
truncated skew Laurent series, the series are flattened into rational
vectors and stacked, and the rank of the stack is computed by Gaussian
elimination over Q. A full-rank truncation proves independence of the
words themselves, because a vanishing combination would vanish in every
truncation. Rank deficiency proves nothing by itself; a candidate relation
is accepted only after it annihilates a fresh expansion at twice the
order.

The module also carries the specialization machinery for families over
Q(t) (coefficient matrices, maximal minors, bad evaluation points), the
``u + t*v`` witness combiner and two probes for one-sided algebraicity.
"""

from __future__ import annotations

import itertools
import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import _expr
from ._fastseries import expand_words_fast
from .errors import PoleError, PrecisionError
from .linalg import IncrementalEchelon, bareiss_det, left_nullspace, nullspace, rank
from .polys import Poly, gcd, lcm, rational_roots, squarefree_decomposition
from .ratfunc import RatFunc, SigmaSpec
from .skew import G1, G2, SkewPoly, SkewSeries, all_words, expand_right_fraction, word_key

log = logging.getLogger(__name__)

INDEPENDENT = "INDEPENDENT"
DEPENDENT = "DEPENDENT"
INCONCLUSIVE = "INCONCLUSIVE"
NOT_DETERMINED = "NOT_DETERMINED"


def default_threads() -> int:
    env = os.environ.get("OREFREE_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _normalize_relation(coeffs: list):
    """Scale so the last nonzero entry is ``-1``."""
    last = next(c for c in reversed(coeffs) if c != 0)
    return [c * (-1 / last) if c != 0 else c for c in coeffs]


def encode_word(w) -> str:
    return "*".join(w) if w else "1"


def decode_word(text: str) -> tuple:
    return () if text == "1" else tuple(text.split("*"))


# ---------------------------------------------------------------------------
# rank over Q of truncated series


def flatten(series: Sequence[SkewSeries], prec: int) -> tuple[list[dict], list[tuple[int, int]]]:
    """Sparse rational rows, one per series, and the ``(exponent, s-power)`` label of every column.

    Each exponent block is put over the lcm of that block's denominators
    and the numerator coefficients are listed; scaling a column block by a
    nonzero common factor does not change the rank.
    """
    lo = min((f.start for f in series if f.coeffs), default=prec + 1)
    rows: list[dict] = [dict() for _ in series]
    labels: list[tuple[int, int]] = []
    for n in range(lo, prec + 1):
        column = [f.coefficient(n) for f in series]
        active = [(i, c) for i, c in enumerate(column) if c]
        if not active:
            continue
        dens = {c.den for _, c in active}
        common = Poly([1])
        for d in sorted(dens, key=lambda d: d.degree, reverse=True):
            if (common % d).is_zero():
                continue
            common = lcm(common, d)
        cofactor = {d: common // d for d in dens}
        width = 0
        scaled = []
        for i, c in active:
            num = c.num * cofactor[c.den]
            scaled.append((i, num))
            width = max(width, len(num.coeffs))
        base = len(labels)
        labels.extend((n, k) for k in range(width))
        for i, num in scaled:
            row = rows[i]
            for k, v in enumerate(num.coeffs):
                if v:
                    row[base + k] = v
    return rows, labels


@dataclass
class IndependenceResult:
    verdict: str
    rank: int
    pivots: list  # (series index, exponent, s-power)
    relation: list | None = None  # rational coefficients over the inputs when rank-deficient

    def __bool__(self) -> bool:
        return self.verdict == INDEPENDENT


def independence_over_k(series: Sequence[SkewSeries], prec: int) -> IndependenceResult:
    """Exact Q-linear independence of truncated series on exponents ``<= prec``."""
    for i, f in enumerate(series):
        if f.prec < prec:
            raise PrecisionError(f"series {i} is valid only to x^{f.prec}", prec)
    rows, labels = flatten(series, prec)
    ech = IncrementalEchelon()
    pivots = []
    relation = None
    for i, row in enumerate(rows):
        kind, value = ech.add(row)
        if kind == "pivot":
            n, k = labels[value]
            pivots.append((i, n, k))
        elif relation is None:
            vec = [value.get(j, Fraction(0)) for j in range(len(series))]
            relation = _normalize_relation(vec)
    if relation is None:
        return IndependenceResult(INDEPENDENT, ech.rank, pivots)
    return IndependenceResult(NOT_DETERMINED, ech.rank, pivots, relation)


# ---------------------------------------------------------------------------
# generators and words


@dataclass(frozen=True)
class Generator:
    """A right fraction ``num * den^{-1}`` of skew polynomials, kept as text."""

    num: str
    den: str = "1"

    def parts(self, sigma: SigmaSpec) -> tuple[SkewPoly, SkewPoly]:
        return SkewPoly.parse(self.num, sigma), SkewPoly.parse(self.den, sigma)

    def expand(self, sigma: SigmaSpec, prec: int) -> SkewSeries:
        p, r = self.parts(sigma)
        return expand_right_fraction(p, r, prec)

    def to_json(self) -> dict:
        return {"num": self.num, "den": self.den}

    @classmethod
    def thm23(cls, b: str) -> tuple["Generator", "Generator"]:
        """``(1-x)^{-1}`` and ``b (1-x)^{-1}``, labelled G1 and G2."""
        return cls("1", "1 - x"), cls(f"{b}" if _is_atom(b) else f"({b})", "1 - x")


def _is_atom(text: str) -> bool:
    return text.replace("/", "").replace("^", "").isalnum()


def expand_words(words: Sequence[tuple], gens: Mapping[str, SkewSeries], prec: int, sigma: SigmaSpec,
                 threads: int = 1) -> dict[tuple, SkewSeries]:
    """Series of every word, sharing prefixes: ``series(w a) = series(w) * gen[a]``."""
    for label, g in gens.items():
        if g.prec < prec:
            raise PrecisionError(f"generator {label} is valid only to x^{g.prec}", prec)
    memo: dict[tuple, SkewSeries] = {(): SkewSeries.one(prec, sigma)}
    by_len: dict[int, list] = {}
    for w in words:
        for k in range(1, len(w) + 1):
            by_len.setdefault(k, set()).add(w[:k])

    def step(w):
        out = memo[w[:-1]] * gens[w[-1]]
        if out.prec < prec:
            raise PrecisionError(f"word {encode_word(w)} loses precision", 2 * prec - out.prec)
        return w, out.truncate(prec)

    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for k in sorted(by_len):
            layer = sorted(by_len[k], key=word_key)
            results = pool.map(step, layer) if pool else map(step, layer)
            memo.update(results)
    finally:
        if pool:
            pool.shutdown()
    return {w: memo[w] for w in words}


@dataclass
class EscalationPolicy:
    """Truncation orders tried by :func:`certify_free`: ``N0, 2*N0, ...``."""

    N0: int | None = None
    max_doublings: int = 2

    def orders(self, max_len: int) -> list[int]:
        n0 = self.N0 if self.N0 is not None else 4 * max_len
        return [n0 * 2 ** k for k in range(self.max_doublings + 1)]


@dataclass
class FreenessCertificate:
    instance: str
    sigma: str
    generators: dict
    L: int
    N: int
    words: list
    verdict: str
    rank: int = 0
    relation: list | None = None  # [[word, coefficient], ...] with nonzero coefficients
    pivots: list | None = None
    trace: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "instance": self.instance,
            "sigma": self.sigma,
            "generators": self.generators,
            "L": self.L,
            "N": self.N,
            "words": list(self.words),
            "verdict": self.verdict,
            "rank": self.rank,
            "trace": self.trace,
            "timings": self.timings,
        }
        if self.relation is not None:
            out["relation"] = self.relation
        if self.pivots is not None:
            out["pivots"] = self.pivots
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "FreenessCertificate":
        return cls(
            instance=data["instance"], sigma=data["sigma"], generators=dict(data["generators"]),
            L=data["L"], N=data["N"], words=list(data["words"]), verdict=data["verdict"],
            rank=data.get("rank", 0), relation=data.get("relation"), pivots=data.get("pivots"),
            trace=list(data.get("trace", [])), timings=dict(data.get("timings", {})),
        )

    def canonical(self) -> str:
        """JSON text without timing data; equal certificates give equal text."""
        body = self.to_json()
        body.pop("timings", None)
        return json.dumps(body, sort_keys=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreenessCertificate):
            return NotImplemented
        return self.canonical() == other.canonical()

    def relation_vector(self) -> dict:
        return {decode_word(w): Fraction(c) for w, c in (self.relation or [])}


def _combine(coeffs: Mapping[tuple, Fraction], series: Mapping[tuple, SkewSeries], prec: int,
             sigma: SigmaSpec) -> SkewSeries:
    total = SkewSeries(prec + 1, (), prec, sigma)
    for w, c in coeffs.items():
        if c:
            total = total + series[w].left_scale(c)
    return total


def verify_relation(relation: Mapping[tuple, Fraction], g1: Generator, g2: Generator, sigma: SigmaSpec,
                    prec: int, threads: int = 1) -> bool:
    """Re-expand the generators from their descriptions and test the relation to ``x^prec``."""
    gens = {G1: g1.expand(sigma, prec), G2: g2.expand(sigma, prec)}
    words = sorted(relation, key=word_key)
    series = expand_words(words, gens, prec, sigma, threads)
    return _combine(relation, series, prec, sigma).is_zero()


def certify_free(g1: Generator, g2: Generator, sigma: SigmaSpec, max_len: int,
                 policy: EscalationPolicy | None = None, *, instance: str = "adhoc",
                 threads: int = 1) -> FreenessCertificate:
    """Certify that the words of length ``<= max_len`` in ``g1, g2`` are Q-independent.

    At each order of the policy the words are expanded and ranked. Full
    rank gives INDEPENDENT. A rank deficiency yields a candidate relation,
    which becomes DEPENDENT only if it annihilates a fresh expansion at
    twice the order; otherwise the order is escalated. Running out of
    orders gives INCONCLUSIVE together with the trace of attempts.
    """
    policy = policy or EscalationPolicy()
    words = all_words(max_len)
    labels = [encode_word(w) for w in words]
    gen_desc = {G1: g1.to_json(), G2: g2.to_json()}
    trace = []
    timings = {}
    t_start = time.perf_counter()
    N = None
    for N in policy.orders(max_len):
        t0 = time.perf_counter()
        gens = {G1: g1.expand(sigma, N), G2: g2.expand(sigma, N)}
        series = expand_words_fast(words, gens, N, sigma, threads)
        t1 = time.perf_counter()
        res = independence_over_k([series[w] for w in words], N)
        t2 = time.perf_counter()
        timings[f"expand_N{N}"] = round(t1 - t0, 6)
        timings[f"rank_N{N}"] = round(t2 - t1, 6)
        entry = {"N": N, "rank": res.rank, "words": len(words)}
        log.info("order %d: rank %d of %d", N, res.rank, len(words))
        if res:
            trace.append({**entry, "outcome": "full rank"})
            timings["total"] = round(time.perf_counter() - t_start, 6)
            return FreenessCertificate(
                instance, str(sigma), gen_desc, max_len, N, labels, INDEPENDENT, res.rank,
                pivots=[[i, n, k] for i, n, k in res.pivots], trace=trace, timings=timings,
            )
        rel = {w: c for w, c in zip(words, res.relation) if c}
        confirmed = verify_relation(rel, g1, g2, sigma, 2 * N, threads)
        trace.append({**entry, "outcome": "relation confirmed at 2N" if confirmed else "relation fails at 2N"})
        if confirmed:
            timings["total"] = round(time.perf_counter() - t_start, 6)
            return FreenessCertificate(
                instance, str(sigma), gen_desc, max_len, N, labels, DEPENDENT, res.rank,
                relation=[[encode_word(w), str(c)] for w, c in sorted(rel.items(), key=lambda wc: word_key(wc[0]))],
                trace=trace, timings=timings,
            )
    timings["total"] = round(time.perf_counter() - t_start, 6)
    return FreenessCertificate(instance, str(sigma), gen_desc, max_len, N, labels, INCONCLUSIVE,
                               res.rank, trace=trace, timings=timings)


# ---------------------------------------------------------------------------
# algebraicity probes


def power_independence(b: SkewSeries, m: int, prec: int) -> IndependenceResult:
    """Independence over Q of ``1, b, ..., b^m`` truncated at ``x^prec``."""
    powers = [SkewSeries.one(b.prec, b.sigma)]
    for _ in range(m):
        powers.append(powers[-1] * b)
    for i, pw in enumerate(powers):
        if pw.prec < prec:
            raise PrecisionError(f"b^{i} is valid only to x^{pw.prec}", prec)
    return independence_over_k([pw.truncate(prec) for pw in powers], prec)


@dataclass
class ProbeResult:
    found: bool
    relation: list | None  # r_0..r_p in K
    window: tuple
    verify_window: tuple
    nullity: int = 0

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "relation": [str(r) for r in self.relation] if self.relation else None,
            "window": list(self.window),
            "verify_window": list(self.verify_window),
            "nullity": self.nullity,
        }


def _power_table(b: SkewSeries, hi: int) -> list[SkewSeries]:
    powers = [SkewSeries.one(b.prec, b.sigma)]
    for _ in range(hi):
        powers.append(powers[-1] * b)
    return powers


def shifted_power_probe(b: SkewSeries, sigma: SigmaSpec, p: int, window: tuple[int, int],
                        verify_window: tuple[int, int] | None = None) -> ProbeResult:
    """Look for ``r_0..r_p`` in K, not all zero, with ``sum_j r_j sigma^j(b^n) = 0`` on a window of ``n``.

    The equations for ``n`` in ``window`` (every valid coefficient of every
    power) are solved exactly over K = Q(s); a nonzero solution is reported
    only if it also holds for every ``n`` in the disjoint ``verify_window``.
    This is a finite probe, not a decision procedure.
    """
    lo, hi = window
    if verify_window is None:
        verify_window = (hi + 1, hi + 1 + (hi - lo))
    vlo, vhi = verify_window
    if not (vlo > hi or vhi < lo):
        raise ValueError("verification window must be disjoint from the search window")
    powers = _power_table(b, max(hi, vhi))

    def rows_for(n):
        shifted = [powers[n].apply_sigma(j) for j in range(p + 1)]
        prec = powers[n].prec
        start = min(f.start for f in shifted)
        return [[f.coefficient(e) for f in shifted] for e in range(start, prec + 1)]

    matrix = [row for n in range(lo, hi + 1) for row in rows_for(n)]
    matrix = [row for row in matrix if any(c for c in row)]
    basis = nullspace(matrix, p + 1, one=RatFunc(1)) if matrix else nullspace([], p + 1, one=RatFunc(1))
    if not basis:
        return ProbeResult(False, None, window, verify_window, 0)
    rel = _normalize_relation(basis[0])
    for n in range(vlo, vhi + 1):
        for row in rows_for(n):
            total = RatFunc(0)
            for r, c in zip(rel, row):
                total = total + r * c
            if total:
                return ProbeResult(False, None, window, verify_window, len(basis))
    return ProbeResult(True, rel, window, verify_window, len(basis))


# ---------------------------------------------------------------------------
# families over Q(t): coefficient matrices, minors and specialization


class TSeries:
    """Polynomial in a central indeterminate ``t`` whose coefficients are skew series."""

    def __init__(self, parts: Mapping[int, SkewSeries]):
        self.parts = {k: v for k, v in sorted(parts.items()) if not v.is_zero()}
        first = next(iter(parts.values()))
        self.sigma = first.sigma
        self.prec = min(v.prec for v in parts.values())

    def coefficient(self, n: int) -> dict[int, RatFunc]:
        """Coefficient of ``x^n`` as a map ``t-power -> element of K``."""
        out = {}
        for k, v in self.parts.items():
            c = v.coefficient(n)
            if c:
                out[k] = c
        return out

    def specialize(self, alpha) -> SkewSeries:
        alpha = Fraction(alpha)
        total = SkewSeries(self.prec + 1, (), self.prec, self.sigma)
        for k, v in self.parts.items():
            total = total + v.left_scale(alpha ** k)
        return total

    def __add__(self, other: "TSeries") -> "TSeries":
        parts = dict(self.parts)
        for k, v in other.parts.items():
            parts[k] = parts[k] + v if k in parts else v
        return TSeries(parts or {0: SkewSeries(self.prec + 1, (), self.prec, self.sigma)})

    def __mul__(self, other: "TSeries") -> "TSeries":
        parts: dict[int, SkewSeries] = {}
        for i, a in self.parts.items():
            for j, b in other.parts.items():
                prod = a * b
                parts[i + j] = parts[i + j] + prod if i + j in parts else prod
        return TSeries(parts or {0: SkewSeries(self.prec + 1, (), self.prec, self.sigma)})

    def __repr__(self) -> str:
        return " + ".join(f"t^{k}*({v})" for k, v in self.parts.items()) or "0"


def combine_witnesses(u: SkewSeries, v: SkewSeries) -> TSeries:
    """``b(t) = u + t*v`` with ``t`` central over the series coefficients."""
    if u.sigma != v.sigma:
        raise ValueError("witnesses must share the automorphism")
    return TSeries({0: u, 1: v})


class _Bi:
    """Polynomial in ``s`` and ``t`` as ``{(i, j): c}`` for the family parser."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = {k: Fraction(v) for k, v in terms.items() if v != 0}

    @staticmethod
    def _c(o):
        return o if isinstance(o, _Bi) else _Bi({(0, 0): o})

    def __add__(self, o):
        o = self._c(o)
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out.get(k, 0) + v
        return _Bi(out)

    __radd__ = __add__

    def __neg__(self):
        return _Bi({k: -v for k, v in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._c(o))

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        out = {}
        for (a, b), v in self.terms.items():
            for (c, d), w in o.terms.items():
                out[(a + c, b + d)] = out.get((a + c, b + d), 0) + v * w
        return _Bi(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = _Bi({(0, 0): 1})
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, o):
        o = self._c(o)
        if set(o.terms) != {(0, 0)}:
            raise ValueError("family elements must be polynomial; put denominators in the denominator list")
        return self * _Bi({(0, 0): 1 / o.terms[(0, 0)]})

    def __rtruediv__(self, o):
        return self._c(o) / self


def _parse_bi(text: str) -> _Bi:
    return _expr.evaluate(text, {"s": _Bi({(1, 0): 1}), "t": _Bi({(0, 1): 1})}, lambda c: _Bi({(0, 0): c}))


def _parse_t(text: str) -> Poly:
    f = RatFunc.parse(text, "t")
    if not f.is_polynomial():
        raise ValueError(f"denominator {text!r} must be a polynomial in t")
    return (f.num * (1 / f.den[0])).with_var("t")


@dataclass
class SpecializationReport:
    elements: list
    denominators: list
    basis: list
    matrix: list  # rows of Poly in t, coordinates of the cleared elements
    verdict: str
    relation: list | None = None  # RatFunc in t
    minors_checked: int = 0
    minor_gcd: Poly | None = None
    common_denominator: Poly | None = None
    bad_points: list = field(default_factory=list)
    justification: list = field(default_factory=list)
    irrational_bad: list = field(default_factory=list)  # polynomials whose irrational roots are bad
    denominator_polys: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "elements": self.elements,
            "denominators": self.denominators,
            "basis": self.basis,
            "matrix": [[str(a) for a in row] for row in self.matrix],
            "verdict": self.verdict,
            "minors_checked": self.minors_checked,
            "bad_points": [str(a) for a in self.bad_points],
            "justification": self.justification,
            "irrational_bad": [str(p) for p in self.irrational_bad],
        }
        if self.relation is not None:
            out["relation"] = [str(r) for r in self.relation]
        if self.minor_gcd is not None:
            out["minor_gcd"] = str(self.minor_gcd)
        return out

    def specialize(self, alpha) -> list[list[Fraction]]:
        """Coordinate rows of ``f_i(alpha)/g_i(alpha)``; raises PoleError at a denominator zero."""
        alpha = Fraction(alpha)
        h = self.common_denominator
        if h(alpha) == 0:
            raise PoleError(next(g for g in self.denominator_polys if g(alpha) == 0), alpha)
        return [[a(alpha) / h(alpha) for a in row] for row in self.matrix]

    def specialized_rank(self, alpha) -> int:
        rows = self.specialize(alpha)
        return rank(rows) if rows and rows[0] else 0


def _irrational_part(p: Poly) -> Poly:
    """Product of the square-free factors of ``p`` that have no rational root."""
    if p.is_constant():
        return Poly([1], p.var)
    q = p.monic()
    for r in rational_roots(q):
        lin = Poly([-r, 1], q.var)
        while (q % lin).is_zero():
            q = q // lin
    out = Poly([1], p.var)
    for part, _ in squarefree_decomposition(q):
        out = out * part
    return out


def dependence_from_matrix(matrix: Sequence[Sequence[Poly]], denominators: Sequence[Poly] | None = None, *,
                           elements=None, basis=None) -> SpecializationReport:
    """Decide dependence over Q(t) of the rows ``f_i/g_i`` given by coordinate polynomials in t.

    The rows are first put over the common denominator ``h = lcm(g_i)``
    (``d_i = (h/g_i) f_i``). The family is dependent over Q(t) iff every
    maximal minor of ``(d_ij)`` vanishes. Otherwise the bad evaluation
    points are the common roots of all maximal minors together with the
    roots of ``h``; rational ones are listed, the rest reported through
    their polynomial.
    """
    n = len(matrix)
    m = len(matrix[0]) if n else 0
    dens = list(denominators) if denominators is not None else [Poly([1], "t")] * n
    dens = [g.with_var("t") for g in dens]
    h = Poly([1], "t")
    for g in dens:
        h = lcm(h, g)
    rows = [[(a.with_var("t") * (h // g)) for a in row] for row, g in zip(matrix, dens)]
    report = SpecializationReport(
        elements=list(elements) if elements is not None else [f"row{i}" for i in range(n)],
        denominators=[str(g) for g in dens], basis=list(basis) if basis is not None else list(range(m)),
        matrix=rows, verdict=DEPENDENT, common_denominator=h, denominator_polys=dens,
    )
    minor_gcd = Poly([], "t")
    count = 0
    if n <= m:
        for cols in itertools.combinations(range(m), n):
            det = bareiss_det([[row[c] for c in cols] for row in rows])
            count += 1
            if not det.is_zero():
                minor_gcd = gcd(minor_gcd, det)
    report.minors_checked = count
    if minor_gcd.is_zero():
        field_rows = [[RatFunc(a) for a in row] for row in rows]
        basis_vecs = left_nullspace(field_rows, one=RatFunc(Poly([1], "t")))
        report.relation = _normalize_relation(basis_vecs[0]) if basis_vecs else None
        return report
    report.verdict = INDEPENDENT
    report.minor_gcd = minor_gcd
    bad = {}
    for r in rational_roots(minor_gcd) if not minor_gcd.is_constant() else []:
        bad.setdefault(r, []).append({"reason": "all maximal minors vanish", "polynomial": str(minor_gcd)})
    for g in dens:
        if g.is_constant():
            continue
        for r in rational_roots(g):
            bad.setdefault(r, []).append({"reason": "denominator vanishes", "polynomial": str(g)})
    report.bad_points = sorted(bad)
    report.justification = [{"point": str(r), "causes": bad[r]} for r in report.bad_points]
    irr = []
    for q in (_irrational_part(minor_gcd), *(_irrational_part(g) for g in dens)):
        if not q.is_constant() and q not in irr:
            irr.append(q)
    report.irrational_bad = irr
    return report


def dependence_over_kt(elements: Sequence[str], denominators: Sequence[str] | None = None,
                       basis: Sequence[str] | None = None) -> SpecializationReport:
    """Family ``f_i(t)/g_i(t)`` with ``f_i`` polynomial in ``s`` and ``t``; V is a space of polynomials in ``s``.

    ``basis`` lists polynomials in ``s`` spanning V (default: the monomials
    in ``s`` that occur). Every t-coefficient of every ``f_i`` must lie in
    their span.
    """
    parsed = [_parse_bi(e) for e in elements]
    dens = [_parse_t(g) for g in denominators] if denominators else None
    if basis is None:
        degs = sorted({i for p in parsed for (i, _) in p.terms}) or [0]
        basis = ["1" if d == 0 else ("s" if d == 1 else f"s^{d}") for d in degs]
    basis_polys = [RatFunc.parse(b).num for b in basis]
    width = max([p.degree for p in basis_polys] + [i for p in parsed for (i, _) in p.terms]) + 1
    bmat = [[bp[k] for k in range(width)] for bp in basis_polys]
    if rank(bmat) != len(bmat):
        raise ValueError("basis polynomials are linearly dependent")

    def coords(vec):
        # solve y * bmat = vec
        sols = left_nullspace(bmat + [[-v for v in vec]])
        sol = next((v for v in sols if v[-1] != 0), None)
        if sol is None:
            raise ValueError("family element not in the span of the basis")
        return [c / sol[-1] for c in sol[:-1]]

    matrix = []
    for p in parsed:
        tdeg = max((j for (_, j) in p.terms), default=0)
        per_t = []
        for j in range(tdeg + 1):
            vec = [p.terms.get((k, j), Fraction(0)) for k in range(width)]
            per_t.append(coords(vec) if any(vec) else [Fraction(0)] * len(basis))
        matrix.append([Poly([per_t[j][b] for j in range(tdeg + 1)], "t") for b in range(len(basis))])
    return dependence_from_matrix(matrix, dens, elements=list(elements), basis=list(basis))
