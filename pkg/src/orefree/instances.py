"""TOML instance files, the shipped registry, and the end-to-end pipeline.

An instance is either a freeness problem (an automorphism, an element
``b`` and a word length) or a word-language problem (an alphabet and
forbidden factors). Instances are read with ``tomli``, written with
``tomli_w``; certificates are written as JSON with sorted keys so that
equal inputs give byte-identical files apart from the timing block.
"""

from __future__ import annotations

import json
import random
import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

import tomli
import tomli_w

from .errors import InstanceError, OrefreeError, ParseError
from .freeness import INCONCLUSIVE, EscalationPolicy, FreenessCertificate, Generator, certify_free, default_threads
from .ratfunc import RatFunc, SigmaSpec
from .sigma_eq import FAILS, HypothesisVerdict, thm23_hypothesis
from .skew import G1, G2, all_words, word_to_series
from .words import DEFAULT_HORIZON, build_language, find_periodic_word, gap_dichotomy

FREENESS = "freeness"
WORDS = "words"

_TOP_KEYS = {"name", "kind", "description", "notes", "sigma", "b", "L", "seed", "certify_on_failure",
             "generators", "policy", "words"}
_GEN_KEYS = {"g1", "g2"}
_FRACTION_KEYS = {"num", "den"}
_POLICY_KEYS = {"N0", "max_doublings"}
_WORDS_KEYS = {"alphabet", "forbid", "horizon"}


@dataclass(frozen=True)
class WordsSpec:
    alphabet: str = "xy"
    forbid: tuple = ()
    horizon: int = DEFAULT_HORIZON


@dataclass(frozen=True)
class InstanceSpec:
    name: str
    kind: str = FREENESS
    description: str = ""
    notes: str = ""
    sigma: SigmaSpec | None = None
    b: str | None = None
    generators: tuple | None = None  # (Generator, Generator); None means the default shape built from b
    L: int = 3
    policy: EscalationPolicy = field(default_factory=EscalationPolicy)
    seed: int = 0
    certify_on_failure: bool = False
    words: WordsSpec | None = None

    def resolved_generators(self) -> tuple[Generator, Generator]:
        if self.generators is not None:
            return self.generators
        return Generator.thm23(self.b)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "kind": self.kind}
        if self.description:
            out["description"] = self.description
        if self.notes:
            out["notes"] = self.notes
        out["seed"] = self.seed
        if self.kind == WORDS:
            w = self.words
            out["words"] = {"alphabet": w.alphabet, "forbid": list(w.forbid), "horizon": w.horizon}
            return out
        out["sigma"] = str(self.sigma)
        if self.b is not None:
            out["b"] = self.b
        out["L"] = self.L
        out["certify_on_failure"] = self.certify_on_failure
        if self.generators is not None:
            out["generators"] = {label: g.to_json() for label, g in zip(("g1", "g2"), self.generators)}
        policy = {"max_doublings": self.policy.max_doublings}
        if self.policy.N0 is not None:
            policy["N0"] = self.policy.N0
        out["policy"] = policy
        return out

    def to_toml(self) -> str:
        return tomli_w.dumps(self.to_dict())


def _reject_unknown(table: Mapping, allowed: set, where: str):
    extra = sorted(set(table) - allowed)
    if extra:
        raise InstanceError(f"unknown key {extra[0]!r} in {where}" + (f" (also {extra[1:]})" if extra[1:] else ""))


def _typed(table: Mapping, key: str, kind, where: str, default=None):
    if key not in table:
        return default
    value = table[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise InstanceError(f"{where}.{key} must be of type {kind.__name__}, got {type(value).__name__}")
    return value


def spec_from_dict(data: Mapping, default_name: str = "instance") -> InstanceSpec:
    """Validate a parsed TOML document."""
    _reject_unknown(data, _TOP_KEYS, "instance")
    name = _typed(data, "name", str, "instance", default_name)
    kind = _typed(data, "kind", str, "instance", WORDS if "words" in data else FREENESS)
    if kind not in (FREENESS, WORDS):
        raise InstanceError(f"instance.kind must be {FREENESS!r} or {WORDS!r}, got {kind!r}")
    common = dict(
        name=name, kind=kind,
        description=_typed(data, "description", str, "instance", ""),
        notes=_typed(data, "notes", str, "instance", ""),
        seed=_typed(data, "seed", int, "instance", 0),
    )
    if kind == WORDS:
        table = _typed(data, "words", dict, "instance")
        if table is None:
            raise InstanceError("a words instance needs a [words] table")
        _reject_unknown(table, _WORDS_KEYS, "[words]")
        forbid = _typed(table, "forbid", list, "words", [])
        if not all(isinstance(w, str) for w in forbid):
            raise InstanceError("words.forbid must be a list of strings")
        ws = WordsSpec(_typed(table, "alphabet", str, "words", "xy"), tuple(forbid),
                       _typed(table, "horizon", int, "words", DEFAULT_HORIZON))
        try:
            build_language(ws.alphabet, ws.forbid)
        except ValueError as exc:
            raise InstanceError(f"invalid word language: {exc}") from None
        stray = sorted({"sigma", "b", "L", "generators", "policy", "certify_on_failure"} & set(data))
        if stray:
            raise InstanceError(f"key {stray[0]!r} does not apply to a words instance")
        return InstanceSpec(**common, words=ws)

    if "words" in data:
        raise InstanceError("key 'words' does not apply to a freeness instance")
    sigma_text = _typed(data, "sigma", str, "instance")
    if sigma_text is None:
        raise InstanceError("missing required key 'sigma'")
    try:
        sigma = SigmaSpec.parse(sigma_text)
    except ValueError as exc:
        raise InstanceError(f"invalid sigma {sigma_text!r}: {exc}") from None
    b = _typed(data, "b", str, "instance")
    if b is not None:
        try:
            RatFunc.parse(b)
        except (ParseError, ValueError, ZeroDivisionError) as exc:
            raise InstanceError(f"invalid b {b!r}: {exc}") from None
    gens = None
    gtable = _typed(data, "generators", dict, "instance")
    if gtable is not None:
        _reject_unknown(gtable, _GEN_KEYS, "[generators]")
        pair = []
        for label in ("g1", "g2"):
            g = _typed(gtable, label, dict, "generators")
            if g is None:
                raise InstanceError(f"[generators] needs both g1 and g2 (missing {label})")
            _reject_unknown(g, _FRACTION_KEYS, f"[generators.{label}]")
            num = _typed(g, "num", str, f"generators.{label}")
            if num is None:
                raise InstanceError(f"generators.{label} needs a 'num' expression")
            gen = Generator(num, _typed(g, "den", str, f"generators.{label}", "1"))
            try:
                gen.parts(sigma)
            except (OrefreeError, ValueError, ZeroDivisionError) as exc:
                raise InstanceError(f"invalid generator {label}: {exc}") from None
            pair.append(gen)
        gens = tuple(pair)
    if b is None and gens is None:
        raise InstanceError("a freeness instance needs 'b' or a [generators] table")
    L = _typed(data, "L", int, "instance", 3)
    if L < 1:
        raise InstanceError(f"L must be at least 1, got {L}")
    ptable = _typed(data, "policy", dict, "instance", {})
    _reject_unknown(ptable, _POLICY_KEYS, "[policy]")
    n0 = _typed(ptable, "N0", int, "policy")
    doublings = _typed(ptable, "max_doublings", int, "policy", 2)
    if n0 is not None and n0 < 1 or doublings < 0:
        raise InstanceError("policy.N0 must be positive and policy.max_doublings nonnegative")
    return InstanceSpec(
        **common, sigma=sigma, b=b, generators=gens, L=L, policy=EscalationPolicy(n0, doublings),
        certify_on_failure=_typed(data, "certify_on_failure", bool, "instance", False),
    )


def parse_instance(text: str, default_name: str = "instance") -> InstanceSpec:
    try:
        data = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        match = re.search(r"line (\d+), column (\d+)", str(exc))
        err = InstanceError(f"TOML syntax error: {exc}")
        err.line, err.column = (int(match[1]), int(match[2])) if match else (None, None)
        raise err from None
    return spec_from_dict(data, default_name)


def registry() -> dict[str, Path]:
    """Shipped instance files by name."""
    root = resources.files("orefree") / "registry"
    return {Path(p.name).stem: Path(str(p)) for p in root.iterdir() if p.name.endswith(".toml")}


def load_instance(path) -> InstanceSpec:
    """Load a TOML instance from a path, or a shipped instance by name (``weyl``)."""
    p = Path(path)
    if not p.exists():
        shipped = registry()
        if p.stem in shipped and (p.suffix in ("", ".toml")):
            p = shipped[p.stem]
        else:
            raise InstanceError(f"no instance file {str(path)!r}; shipped instances: {sorted(shipped)}")
    return parse_instance(p.read_text(encoding="utf-8"), p.stem)


# ---------------------------------------------------------------------------
# pipeline


@dataclass
class PipelineResult:
    instance: InstanceSpec
    hypothesis: HypothesisVerdict | None = None
    certificate: FreenessCertificate | None = None
    certification: str = "skipped"  # "run", "run (hypothesis fails)" or "skipped"
    spot_checks: list = field(default_factory=list)
    words: dict | None = None
    timings: dict = field(default_factory=dict)

    @property
    def inconclusive(self) -> bool:
        return self.certificate is not None and self.certificate.verdict == INCONCLUSIVE

    def to_json(self) -> dict:
        spec = self.instance
        out: dict[str, Any] = {"instance": spec.name, "kind": spec.kind, "seed": spec.seed}
        if spec.kind == WORDS:
            out["words"] = self.words
        else:
            out["sigma"] = str(spec.sigma)
            out["b"] = spec.b
            out["hypothesis"] = self.hypothesis.to_json() if self.hypothesis else None
            out["certification"] = self.certification
            out["certificate"] = self.certificate.to_json() if self.certificate else None
            out["spot_checks"] = self.spot_checks
        out["timings"] = self.timings
        return out

    def canonical(self) -> str:
        """Sorted JSON without any timing data."""
        body = self.to_json()
        body.pop("timings", None)
        if body.get("certificate"):
            body["certificate"] = dict(body["certificate"])
            body["certificate"].pop("timings", None)
        return json.dumps(body, sort_keys=True)


def _spot_checks(spec: InstanceSpec, g1: Generator, g2: Generator, count: int = 3, prec: int = 6) -> list:
    """Seeded homomorphism checks ``series(uv) = series(u) series(v)`` on random words."""
    rng = random.Random(spec.seed)
    sigma = spec.sigma
    gens = {G1: g1.expand(sigma, prec), G2: g2.expand(sigma, prec)}
    pool = all_words(min(spec.L, 3))
    out = []
    for _ in range(count):
        u, v = rng.choice(pool), rng.choice(pool)
        whole = word_to_series(u + v, gens, prec, sigma)
        split = word_to_series(u, gens, prec, sigma) * word_to_series(v, gens, prec, sigma)
        out.append({"u": "*".join(u), "v": "*".join(v), "holds": whole == split})
    return out


def run_pipeline(spec: InstanceSpec, *, threads: int | None = None,
                 certify_on_failure: bool | None = None) -> PipelineResult:
    """Hypothesis check, then certification (skipped after FAILS unless requested)."""
    threads = threads or default_threads()
    result = PipelineResult(spec)
    t0 = time.perf_counter()
    if spec.kind == WORDS:
        lang = build_language(spec.words.alphabet, spec.words.forbid)
        dich = gap_dichotomy(lang, spec.words.horizon)
        per = dich.periodic or find_periodic_word(lang, spec.words.horizon)
        result.words = {"alphabet": lang.alphabet, "forbid": list(lang.forbidden),
                        "dichotomy": dich.to_json(), "periodic": per.to_json()}
        result.timings["total"] = round(time.perf_counter() - t0, 6)
        return result
    g1, g2 = spec.resolved_generators()
    if spec.b is not None:
        try:
            result.hypothesis = thm23_hypothesis(spec.b, spec.sigma)
        except OrefreeError as exc:
            exc.stage = "hypothesis"
            raise
    t1 = time.perf_counter()
    result.timings["hypothesis"] = round(t1 - t0, 6)
    failing = result.hypothesis is not None and result.hypothesis.status == FAILS
    wanted = spec.certify_on_failure if certify_on_failure is None else certify_on_failure
    if not failing or wanted:
        try:
            result.certificate = certify_free(g1, g2, spec.sigma, spec.L, spec.policy,
                                              instance=spec.name, threads=threads)
        except OrefreeError as exc:
            exc.stage = "certify"
            raise
        result.certification = "run (hypothesis fails)" if failing else "run"
        result.spot_checks = _spot_checks(spec, g1, g2)
    result.timings["certify"] = round(time.perf_counter() - t1, 6)
    result.timings["total"] = round(time.perf_counter() - t0, 6)
    return result


def write_result(result: PipelineResult | FreenessCertificate, path) -> str:
    text = json.dumps(result.to_json(), sort_keys=True, indent=2) + "\n"
    Path(path).write_text(text, encoding="utf-8")
    return text


def read_certificate(path) -> FreenessCertificate:
    """Certificate from a file written by :func:`write_result` (bare or inside a pipeline bundle)."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if "certificate" in data:
        data = data["certificate"]
        if data is None:
            raise InstanceError(f"{path} holds no certificate (certification was skipped)")
    return FreenessCertificate.from_json(data)


def hypothesis_witness_holds(verdict: HypothesisVerdict, b, sigma: SigmaSpec) -> bool:
    """Re-check ``sigma(u) - u = b + e`` for a FAILS verdict."""
    b = RatFunc.coerce(b)
    u = verdict.u
    return sigma.apply(u, 1) - u == b + RatFunc(Fraction(verdict.e))
