"""Command-line entry point: ``orefree <command> [options]``.

Every command builds a JSON payload, which is the contract, plus a short
human table; ``--table`` prints the table instead. Exit codes: 0 success,
1 error, 2 inconclusive certificate, 64 usage.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .errors import InstanceError, OrefreeError, PoleError, PrecisionError
from .freeness import INCONCLUSIVE, EscalationPolicy, Generator, certify_free, default_threads, dependence_over_kt
from .instances import WORDS, load_instance, registry, run_pipeline, write_result
from .quaternion import (Quaternion, QuatRat, centralizer_basis, clear_left_denominator, embed_series,
                         verify_centralizer_in_Dt)
from .ratfunc import RatFunc, SigmaSpec
from .schemas import SCHEMAS, schema_for
from .sigma_eq import solve_additive, thm23_hypothesis, weyl_element_exists
from .words import DEFAULT_HORIZON, build_language, find_periodic_word, gap_dichotomy, growth

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64


@dataclass
class CommandResult:
    exit_code: int
    payload: dict | None
    table: str
    use_table: bool = False

    def render(self) -> str:
        if self.use_table or self.payload is None:
            return self.table
        return json.dumps(self.payload, indent=2, sort_keys=True)


class UsageError(Exception):
    def __init__(self, message: str, usage: str = "", command: str | None = None):
        super().__init__(message)
        self.usage = usage
        self.command = command


class _HelpExit(Exception):
    def __init__(self, text: str):
        self.text = text


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, self.format_usage(), self.prog.split(" ")[1] if " " in self.prog else None)

    def exit(self, status=0, message=None):
        if status:
            raise UsageError(message or "usage error", self.format_usage())
        raise _HelpExit("")


def _csv(text: str | None) -> list[str]:
    if not text:
        return []
    return [part.strip() for part in text.split(",") if part.strip()]


def _table(rows) -> str:
    rows = [(str(k), v if isinstance(v, str) else json.dumps(v)) for k, v in rows]
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _short(seq, n: int = 16) -> str:
    seq = list(seq)
    body = " ".join(str(x) for x in seq[:n])
    return body + (" ..." if len(seq) > n else "")


# ---------------------------------------------------------------------------
# certify


def _certify(args) -> CommandResult:
    if args.instance:
        spec = load_instance(args.instance)
        if spec.kind == WORDS:
            raise UsageError(f"instance {spec.name!r} is a words instance; use 'orefree words --instance'")
        sigma, (g1, g2), name = spec.sigma, spec.resolved_generators(), spec.name
        L, policy = spec.L, spec.policy
    else:
        if not args.sigma:
            raise UsageError("certify needs --instance, or --sigma with --b or --g1/--g2")
        sigma = SigmaSpec.parse(args.sigma)
        if args.g1 or args.g2:
            if not (args.g1 and args.g2):
                raise UsageError("--g1 and --g2 must be given together")
            g1, g2 = Generator(args.g1, args.g1_den), Generator(args.g2, args.g2_den)
        elif args.b:
            g1, g2 = Generator.thm23(args.b)
        else:
            raise UsageError("certify needs --b or both --g1 and --g2")
        name, L, policy = "adhoc", 3, EscalationPolicy()
    if args.max_word_len is not None:
        L = args.max_word_len
    if L < 1:
        raise UsageError("--max-word-len must be at least 1")
    policy = EscalationPolicy(args.N0 if args.N0 is not None else policy.N0,
                              args.max_doublings if args.max_doublings is not None else policy.max_doublings)
    cert = certify_free(g1, g2, sigma, L, policy, instance=name, threads=args.threads)
    if args.out:
        write_result(cert, args.out)
    rows = [("instance", cert.instance), ("sigma", cert.sigma)]
    rows += [(label, f"({g['num']}) * ({g['den']})^-1") for label, g in cert.generators.items()]
    rows += [("L", str(cert.L)), ("N", str(cert.N)), ("words", str(len(cert.words))),
             ("verdict", cert.verdict), ("rank", f"{cert.rank}/{len(cert.words)}")]
    for w, c in cert.relation or []:
        rows.append(("relation", f"{c} * {w}"))
    for step in cert.trace:
        rows.append(("trace", f"N={step['N']} rank={step['rank']}/{step['words']} {step['outcome']}"))
    code = EXIT_INCONCLUSIVE if cert.verdict == INCONCLUSIVE else EXIT_OK
    return CommandResult(code, {"command": "certify", "certificate": cert.to_json()}, _table(rows))


# ---------------------------------------------------------------------------
# sigma-solve


def _sigma_solve(args) -> CommandResult:
    sigma = SigmaSpec.parse(args.sigma)
    payload = {"command": "sigma-solve", "sigma": str(sigma), "fixed_field": sigma.fixed_field_note}
    if args.weyl:
        payload["mode"] = "weyl"
        verdict = weyl_element_exists(sigma).to_json()
    else:
        if args.f is None:
            raise UsageError("sigma-solve needs --f (or --weyl)")
        f = RatFunc.parse(args.f)
        payload["f"] = str(f)
        if args.hypothesis:
            payload["mode"] = "hypothesis"
            verdict = thm23_hypothesis(f, sigma).to_json()
        else:
            payload["mode"] = "solve"
            verdict = solve_additive(f, sigma).to_json()
    payload["verdict"] = verdict
    rows = [("mode", payload["mode"]), ("sigma", payload["sigma"])]
    if "f" in payload:
        rows.append(("f" if payload["mode"] == "solve" else "b", payload["f"]))
    rows.append(("status", verdict["status"]))
    for key in ("u", "e"):
        if key in verdict:
            rows.append((key, verdict[key]))
    obs = verdict.get("obstruction")
    if obs:
        rows.append(("obstruction", obs["kind"]))
        for key in ("representative", "residue", "constant"):
            if key in obs:
                rows.append((f"  {key}", obs[key]))
    return CommandResult(EXIT_OK, payload, _table(rows))


# ---------------------------------------------------------------------------
# words


def _words(args) -> CommandResult:
    alphabet, forbid, horizon = args.alphabet, _csv(args.forbid), args.horizon
    if args.instance:
        spec = load_instance(args.instance)
        if spec.kind != WORDS:
            raise UsageError(f"instance {spec.name!r} is not a words instance")
        alphabet, forbid = spec.words.alphabet, list(spec.words.forbid)
        horizon = horizon if horizon is not None else spec.words.horizon
    horizon = DEFAULT_HORIZON if horizon is None else horizon
    if horizon < 1:
        raise UsageError("--horizon must be positive")
    lang = build_language(alphabet or "xy", forbid)
    payload = {"command": "words", "alphabet": lang.alphabet, "forbid": list(lang.forbidden),
               "states": lang.num_states, "infinite": lang.is_infinite()}
    rows = [("alphabet", lang.alphabet), ("forbid", ",".join(lang.forbidden) or "(none)")]
    if args.member:
        payload["mode"] = "member"
        payload["membership"] = {w: lang.membership(w) for w in args.member}
        rows += [(f"member {w}", "yes" if ok else "no") for w, ok in payload["membership"].items()]
    elif args.growth:
        payload["mode"] = "growth"
        prof = growth(lang, horizon)
        payload["profile"] = prof.to_json()
        rows += [("f", _short(prof.f)), ("g", _short(prof.g)), ("cumulative", _short(prof.cumulative))]
    elif args.periodic:
        payload["mode"] = "periodic"
        res = find_periodic_word(lang, horizon)
        payload["periodic"] = res.to_json()
        rows.append(("status", res.status))
        rows.append(("u", res.u) if res.found else ("reason", res.reason))
        if res.found:
            rows.append(("index", str(res.index)))
    else:
        payload["mode"] = "dichotomy"
        dich = gap_dichotomy(lang, horizon)
        payload["dichotomy"] = dich.to_json()
        rows.append(("kind", dich.kind))
        if dich.u is not None:
            rows.append(("u", dich.u))
        if dich.d is not None:
            rows.append(("d", f"{dich.d} (f(d) = {dich.profile.f[dich.d]})"))
        rows.append(("cumulative", _short(dich.profile.cumulative)))
    return CommandResult(EXIT_OK, payload, _table(rows))


# ---------------------------------------------------------------------------
# testbed


def _testbed(args) -> CommandResult:
    payload = {"command": "testbed", "action": args.action}
    if args.action == "centralizer":
        a = Quaternion.parse(args.a)
        basis = [str(b) for b in centralizer_basis(a)]
        payload.update(a=str(a), basis=basis, dimension=len(basis))
        rows = [("a", str(a)), ("dimension", str(len(basis))), ("basis", ", ".join(basis))]
    elif args.action == "clear-denominator":
        a = Quaternion.parse(args.a)
        cleared = clear_left_denominator(a)
        payload.update(a=str(a), p=str(cleared.p), cofactor=str(cleared.cofactor), identity_checked=True)
        rows = [("a", str(a)), ("p(t)", str(cleared.p)), ("cofactor", str(cleared.cofactor))]
    elif args.action == "embed":
        w = QuatRat.parse(args.w)
        series = embed_series(w, args.order, laurent=args.laurent)
        payload.update(w=str(w), order=args.order, series=str(series), coefficients=series.to_json())
        rows = [("w", str(w)), ("series", str(series))]
    else:
        w, a = QuatRat.parse(args.w), Quaternion.parse(args.a)
        check = verify_centralizer_in_Dt(w, a)
        payload.update(w=str(w), a=str(a), **check.to_json())
        rows = [("w", str(w)), ("a", str(a)), ("status", check.status)]
    return CommandResult(EXIT_OK, payload, _table(rows))


# ---------------------------------------------------------------------------
# specialize


def _specialize(args) -> CommandResult:
    elements = _csv(args.elements)
    if not elements:
        raise UsageError("specialize needs a nonempty --elements list")
    dens = _csv(args.denominators) or None
    if dens is not None and len(dens) != len(elements):
        raise UsageError(f"{len(elements)} elements but {len(dens)} denominators")
    report = dependence_over_kt(elements, dens, _csv(args.basis) or None)
    samples = []
    for text in _csv(args.alpha):
        alpha = Fraction(text)
        entry = {"alpha": str(alpha)}
        try:
            r = report.specialized_rank(alpha)
            entry.update(rank=r, full_rank=r == len(elements))
        except PoleError as exc:
            entry.update(rank=None, full_rank=False, pole=str(exc.denominator))
        samples.append(entry)
    payload = {"command": "specialize", "report": report.to_json(), "samples": samples}
    rows = [("elements", ", ".join(elements)), ("basis", ", ".join(str(b) for b in report.basis)),
            ("verdict", report.verdict), ("bad points", ", ".join(str(b) for b in report.bad_points) or "(none)")]
    if report.irrational_bad:
        rows.append(("irrational", ", ".join(str(p) for p in report.irrational_bad)))
    rows += [(f"alpha={s['alpha']}", f"rank {s['rank']}") for s in samples]
    return CommandResult(EXIT_OK, payload, _table(rows))


# ---------------------------------------------------------------------------
# run, instances, schema


def _run(args) -> CommandResult:
    spec = load_instance(args.instance)
    result = run_pipeline(spec, threads=args.threads, certify_on_failure=True if args.certify_on_failure else None)
    if args.out:
        write_result(result, args.out)
    payload = {"command": "run", "result": result.to_json()}
    if args.out:
        payload["out"] = str(args.out)
    rows = [("instance", spec.name), ("kind", spec.kind)]
    if spec.kind == WORDS:
        dich = result.words["dichotomy"]
        rows += [("dichotomy", dich["kind"]), ("periodic", result.words["periodic"].get("u") or "-")]
    else:
        hyp = result.hypothesis
        rows.append(("hypothesis", hyp.status if hyp else "-"))
        if hyp is not None and not hyp.holds:
            rows += [("  u", str(hyp.u)), ("  e", str(hyp.e))]
        rows.append(("certification", result.certification))
        if result.certificate:
            c = result.certificate
            rows.append(("verdict", f"{c.verdict} (L={c.L}, N={c.N}, rank {c.rank}/{len(c.words)})"))
    rows.append(("seconds", f"{result.timings.get('total', 0):.3f}"))
    code = EXIT_INCONCLUSIVE if result.inconclusive else EXIT_OK
    return CommandResult(code, payload, _table(rows))


def _instances(args) -> CommandResult:
    items = []
    for name, path in sorted(registry().items()):
        spec = load_instance(path)
        items.append({"name": name, "kind": spec.kind, "description": spec.description, "path": str(path)})
    rows = [(i["name"], f"[{i['kind']}] {i['description']}") for i in items]
    return CommandResult(EXIT_OK, {"command": "instances", "instances": items}, _table(rows))


def _schema(args) -> CommandResult:
    body = schema_for(args.name)
    return CommandResult(EXIT_OK, {"command": "schema", "name": args.name, "schema": body},
                         json.dumps(body, indent=2))


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", dest="table", action="store_false", help="print the JSON payload (default)")
    out.add_argument("--table", dest="table", action="store_true", help="print a human-readable summary")
    common.set_defaults(table=False)
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: $OREFREE_THREADS, else the number of cores)")

    parser = _Parser(prog="orefree", description="Exact skew-series algebra and free-subalgebra certificates.")
    parser.add_argument("--version", action="version", version=f"orefree {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    p = sub.add_parser("certify", parents=[common], help="certify independence of the words in two generators")
    p.add_argument("--instance", help="instance file or shipped instance name")
    p.add_argument("--sigma", help="automorphism, e.g. shift:1 or dilation:2")
    p.add_argument("--b", help="element b; generators (1-x)^-1 and b(1-x)^-1")
    p.add_argument("--g1", help="numerator of G1 (skew polynomial in x)")
    p.add_argument("--g1-den", default="1", help="right denominator of G1")
    p.add_argument("--g2", help="numerator of G2")
    p.add_argument("--g2-den", default="1", help="right denominator of G2")
    p.add_argument("--max-word-len", "-L", type=int, help="maximal word length")
    p.add_argument("--N0", type=int, help="first truncation order (default 4L)")
    p.add_argument("--max-doublings", type=int, help="number of times the order may double")
    p.add_argument("--out", help="write the certificate JSON here")
    p.set_defaults(handler=_certify)

    p = sub.add_parser("sigma-solve", parents=[common], help="decide sigma(u) - u = f over Q(s)")
    p.add_argument("--sigma", required=True)
    p.add_argument("--f", help="right-hand side (with --hypothesis: the element b)")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--hypothesis", action="store_true", help="decide sigma(u) - u = b + e for some constant e")
    mode.add_argument("--weyl", action="store_true", help="decide whether sigma(u) = u + 1 has a solution")
    p.set_defaults(handler=_sigma_solve)

    p = sub.add_parser("words", parents=[common], help="languages avoiding forbidden factors")
    p.add_argument("--alphabet", default="xy")
    p.add_argument("--forbid", default="", help="comma-separated forbidden factors")
    p.add_argument("--instance", help="shipped words instance")
    p.add_argument("--horizon", type=int, default=None, help=f"length horizon (default {DEFAULT_HORIZON})")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--dichotomy", action="store_true", help="periodic word or binomial growth (default)")
    mode.add_argument("--periodic", action="store_true", help="search a word all of whose powers survive")
    mode.add_argument("--growth", action="store_true", help="growth functions f, g and cumulative sums")
    mode.add_argument("--member", action="append", metavar="WORD", help="membership test (repeatable)")
    p.set_defaults(handler=_words)

    p = sub.add_parser("testbed", help="rational quaternions and H(t)")
    tsub = p.add_subparsers(dest="action", metavar="ACTION", parser_class=_Parser)
    t = tsub.add_parser("centralizer", parents=[common], help="basis of the centralizer of a quaternion")
    t.add_argument("--a", required=True)
    t = tsub.add_parser("clear-denominator", parents=[common], help="p(t) with p(t)(1 - a t)^-1 polynomial")
    t.add_argument("--a", required=True)
    t = tsub.add_parser("embed", parents=[common], help="expansion of an element of H(t) in H((t))")
    t.add_argument("--w", required=True)
    t.add_argument("--order", type=int, default=4)
    t.add_argument("--laurent", action="store_true", help="allow a denominator vanishing at t = 0")
    t = tsub.add_parser("verify", parents=[common], help="centralizer membership of w in H(t)")
    t.add_argument("--w", required=True)
    t.add_argument("--a", required=True)
    p.set_defaults(handler=_testbed)

    p = sub.add_parser("specialize", parents=[common], help="dependence over Q(t) and bad specialization points")
    p.add_argument("--elements", required=True, help="comma-separated polynomials in s and t")
    p.add_argument("--denominators", help="comma-separated polynomials in t")
    p.add_argument("--basis", help="comma-separated polynomials in s spanning the coefficient space")
    p.add_argument("--alpha", help="comma-separated rationals at which to specialize")
    p.set_defaults(handler=_specialize)

    p = sub.add_parser("run", parents=[common], help="hypothesis check followed by certification")
    p.add_argument("--instance", required=True)
    p.add_argument("--out")
    p.add_argument("--certify-on-failure", action="store_true", help="certify even when the hypothesis fails")
    p.set_defaults(handler=_run)

    p = sub.add_parser("instances", parents=[common], help="list shipped instances")
    p.set_defaults(handler=_instances)

    p = sub.add_parser("schema", parents=[common], help="print the JSON schema of a command's output")
    p.add_argument("name", choices=sorted(SCHEMAS))
    p.set_defaults(handler=_schema)
    return parser


def _error_payload(command, exc: BaseException, kind: str | None = None) -> dict:
    err = {"type": kind or type(exc).__name__, "message": str(exc)}
    if getattr(exc, "stage", None):
        err["stage"] = exc.stage
    if isinstance(exc, InstanceError) and hasattr(exc, "line"):
        err.update(line=exc.line, column=exc.column)
    if isinstance(exc, PrecisionError):
        err["required_order"] = exc.required
    return {"command": command, "error": err}


def dispatch(argv=None) -> CommandResult:
    """Parse ``argv`` and run the command; never raises."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    buf = io.StringIO()
    try:
        with contextlib.redirect_stdout(buf):
            args = parser.parse_args(argv)
    except _HelpExit:
        return CommandResult(EXIT_OK, None, buf.getvalue().rstrip("\n"))
    except UsageError as exc:
        payload = _error_payload(exc.command, exc, "usage")
        return CommandResult(EXIT_USAGE, payload, f"{exc.usage}orefree: error: {exc}")
    if not getattr(args, "handler", None) or (args.command == "testbed" and not args.action):
        usage = parser.format_help() if not getattr(args, "command", None) else f"orefree {args.command}: missing action"
        message = "missing command" if not getattr(args, "command", None) else "missing action"
        payload = {"command": getattr(args, "command", None), "error": {"type": "usage", "message": message}}
        return CommandResult(EXIT_USAGE, payload, usage.rstrip("\n"))
    use_table = bool(getattr(args, "table", False))
    try:
        if getattr(args, "threads", None) is None and hasattr(args, "threads"):
            args.threads = default_threads()
        if hasattr(args, "threads") and args.threads < 1:
            raise UsageError("--threads must be positive")
        result = args.handler(args)
    except UsageError as exc:
        payload = _error_payload(args.command, exc, "usage")
        return CommandResult(EXIT_USAGE, payload, f"orefree {args.command}: error: {exc}", use_table)
    except (OrefreeError, ValueError, ArithmeticError, OSError) as exc:
        payload = _error_payload(args.command, exc)
        stage = f"[{exc.stage}] " if getattr(exc, "stage", None) else ""
        return CommandResult(EXIT_ERROR, payload, f"error: {stage}{exc}", use_table)
    except Exception as exc:  # noqa: BLE001 - the CLI reports every failure as structured output
        payload = _error_payload(args.command, exc, "internal")
        return CommandResult(EXIT_ERROR, payload, f"internal error: {type(exc).__name__}: {exc}", use_table)
    result.use_table = use_table
    return result


def main(argv=None) -> int:
    result = dispatch(argv)
    text = result.render()
    if result.exit_code == EXIT_USAGE and result.payload is not None:
        print(result.table, file=sys.stderr)
        if not result.use_table:
            print(json.dumps(result.payload, indent=2, sort_keys=True))
    else:
        print(text)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
