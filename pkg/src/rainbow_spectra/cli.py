"""Command line front end: ``python -m rainbow_spectra <command> ...``.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import lemmas, search, semigroup, spectrum
from .certificates import Check, CertificateDocument, CertificateFormatError

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def _div4_k(args) -> int:
    if args.k is not None:
        return args.k
    if args.n is None:
        raise UsageError("give --k or --n")
    if args.n % 4:
        raise UsageError(f"--n {args.n} is not a multiple of 4")
    return args.n // 4


def _even_n(args) -> int:
    if args.n is None:
        raise UsageError("the even case needs --n")
    return args.n


def _family(args):
    if args.case == "even":
        n = _even_n(args)
        return n, search.even_family(n)
    k = _div4_k(args)
    return 4 * k, search.div4_family(k)


def _cert_checks(cert: search.CycleCertificate) -> list[Check]:
    detail = cert.detail or "failed"
    return [
        Check("multiset", cert.multiset_ok, "" if cert.multiset_ok else detail),
        Check("closed", cert.closed_ok, "" if cert.closed_ok else detail),
        Check("distinct", cert.distinct_ok, "" if cert.distinct_ok else detail),
        Check("forced-rainbow", cert.forced_rainbow_ok, "" if cert.forced_rainbow_ok else detail),
    ]


# ----------------------------------------------------------------- commands

def cmd_semigroup(args) -> CertificateDocument:
    A = semigroup.NumericalSemigroup(args.gens, includes_zero=args.monoid)
    result: dict = {"generators": list(A.generators), "includes_zero": A.includes_zero}
    checks = []
    want_any = args.period or args.conductor_step is not None or args.bound is not None
    if args.period or not want_any:
        result["period"] = semigroup.period(A)
    if args.bound is not None:
        result["members"] = semigroup.members_up_to(A, args.bound)
    if args.conductor_step is not None:
        p = args.conductor_step
        try:
            N = semigroup.progression_conductor(A, p)
        except semigroup.NoSuchProgressionError as exc:
            checks.append(Check("progression-exists", False, str(exc)))
        else:
            result["conductor"] = N
            bits = A.bitset(N + 10 * p)
            inside = all(bits >> (N + j * p) & 1 for j in range(10))
            minimal = N - p < 1 or not bits >> (N - p) & 1
            checks.append(Check("progression-inside", inside, "" if inside else "member missing"))
            checks.append(Check("minimal", minimal, "" if minimal else f"{N - p} also works"))
    return CertificateDocument("semigroup", {"gens": args.gens, "monoid": args.monoid,
                                             "period": args.period,
                                             "conductor_step": args.conductor_step,
                                             "bound": args.bound}, result, tuple(checks))


def cmd_spectrum(args) -> CertificateDocument:
    n = args.n
    if n < 3:
        raise UsageError("--n must be >= 3")
    p, N = spectrum.main_theorem_bound(n)
    limit = args.limit if args.limit is not None else max(4 * N, n)
    if limit < n:
        raise UsageError("--limit must be >= --n")
    facts = spectrum.implied_members(n, limit)
    result = {"period_class": spectrum.period_class(n), "main_bound": N, "limit": limit,
              "members": list(facts.derived)}
    checks = []
    if args.verify_main:
        if limit < N:
            raise UsageError("--limit must be >= the main bound for --verify-main")
        ok, missing = spectrum.verify_progression(n, p, N, limit)
        result["missing"] = missing
        checks.append(Check("main-theorem-progression", ok,
                            "" if ok else f"{missing} not derived"))
    return CertificateDocument("spectrum", {"n": n, "limit": limit,
                                            "verify_main": args.verify_main}, result, tuple(checks))


def cmd_lemmas(args) -> CertificateDocument:
    n = args.n
    try:
        if args.case == "even":
            chain = lemmas.lemma_even_chain(n)
        else:
            chain = lemmas.lemma_div4_chain(n, through=3 if n >= 20 else 2)
    except lemmas.LemmaPreconditionError as exc:
        raise UsageError(str(exc))
    except lemmas.ScriptStepFailed as exc:
        return CertificateDocument("lemmas", {"n": n, "case": args.case},
                                   {"failed_step": exc.step},
                                   (Check("script", False, str(exc)),))
    checks = [Check("script", True)]
    families = []
    for fam in chain.families:
        bad = chain.mismatches(fam)
        families.append({"length": fam.length, "offset": fam.offset, "width": fam.width})
        checks.append(Check(f"family-{fam.name}", not bad,
                            "" if not bad else f"differs at bases {bad[:10]}"))
    result = {"M": chain.M, "families": families, "steps": len(chain.steps),
              "notes": list(chain.notes)}
    return CertificateDocument("lemmas", {"n": n, "case": args.case}, result, tuple(checks))


def cmd_construct(args) -> CertificateDocument:
    n, family = _family(args)
    inputs = {"case": args.case, "n": n}
    try:
        if args.case == "even":
            trace, steps = search.construct_even(n)
        else:
            trace, steps = search.construct_div4(n // 4)
    except search.InequalityFailed as exc:
        return CertificateDocument("construct", inputs, {"inequalities": exc.report},
                                   (Check("inequalities", False, str(exc)),))
    except search.ConstructionInvariantFailed as exc:
        return CertificateDocument("construct", inputs, None,
                                   (Check("construction", False, str(exc)),))
    cert = search.verify_cycle(family.M, steps, n, family)
    trace_d = {k: v for k, v in trace.__dict__.items() if v is not None}
    trace_d["round_positions"] = list(trace.round_positions)
    trace_d["inequality_report"] = dict(trace.inequality_report)
    result = {"trace": trace_d, "steps": steps, "compact": search.format_compact(steps, family.M),
              "certificate": cert.to_dict()}
    return CertificateDocument("construct", inputs, result, tuple(_cert_checks(cert)))


def cmd_search(args) -> CertificateDocument:
    n, family = _family(args)
    ms = family.multiset
    progress = None
    if not args.quiet:
        def progress(nodes):
            print(f"[search] {nodes:,} nodes", file=sys.stderr, flush=True)
    res = search.backtrack_search(family.M, ms, family, exhaustive=args.exhaustive,
                                  node_budget=args.budget, progress=progress)
    inputs = {"case": args.case, "n": n, "exhaustive": args.exhaustive, "budget": args.budget}
    result = {"status": res.status, "nodes": res.nodes,
              "steps": list(res.steps) if res.steps else None}
    if res.status == search.FOUND:
        cert = search.verify_cycle(family.M, res.steps, n, family)
        result["compact"] = search.format_compact(res.steps, family.M)
        result["certificate"] = cert.to_dict()
        checks = _cert_checks(cert)
    elif res.status == search.NONE:
        checks = [Check("search-complete", True)]
    else:
        checks = [Check("search-complete", False, f"budget of {args.budget} nodes exhausted")]
    return CertificateDocument("search", inputs, result, tuple(checks))


def _steps_from_file(path: Path, M: int) -> list[int]:
    text = path.read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        doc = CertificateDocument.from_json(text)
        steps = (doc.result or {}).get("steps")
        if not steps:
            raise CertificateFormatError("document has no result.steps")
        return [int(s) for s in steps]
    return search.parse_compact(text, M)


def cmd_verify(args) -> CertificateDocument:
    n, family = _family(args)
    M = family.M
    inputs = {"case": args.case, "n": n}
    try:
        if args.file is not None:
            inputs["file"] = str(args.file)
            steps = _steps_from_file(Path(args.file), M)
        elif args.compact is not None:
            inputs["compact"] = args.compact
            steps = search.parse_compact(args.compact, M)
        else:
            inputs["vertices"] = args.vertices
            steps = search.steps_from_vertices(_int_list(args.vertices.replace("→", ",")), M)
    except (search.CompactParseError, CertificateFormatError) as exc:
        return CertificateDocument("verify", inputs, None, (Check("parse", False, str(exc)),))
    cert = search.verify_cycle(M, steps, n, family)
    return CertificateDocument("verify", inputs, cert.to_dict(), tuple(_cert_checks(cert)))


# ----------------------------------------------------------------- plumbing

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rainbow-spectra",
                                 description="Rainbow-cycle spectrum calculations and certificates")
    ap.add_argument("--json", action="store_true", help="emit a JSON certificate document")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                       help="emit a JSON certificate document")
        return p

    p = add("semigroup", "numerical semigroup arithmetic")
    p.add_argument("--gens", type=_int_list, required=True)
    p.add_argument("--monoid", action="store_true", help="include 0")
    p.add_argument("--period", action="store_true")
    p.add_argument("--conductor-step", type=int)
    p.add_argument("--bound", type=int)
    p.set_defaults(func=cmd_semigroup)

    p = add("spectrum", "guaranteed members of spec(G) given n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int)
    p.add_argument("--verify-main", action="store_true")
    p.set_defaults(func=cmd_spectrum)

    p = add("lemmas", "run the chord-color derivation scripts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--case", choices=("even", "div4"), required=True)
    p.set_defaults(func=cmd_lemmas)

    for name, help_, func in (("construct", "deterministic witness cycle", cmd_construct),
                              ("search", "depth-first witness search", cmd_search),
                              ("verify", "verify a witness cycle", cmd_verify)):
        p = add(name, help_)
        p.add_argument("--case", choices=("even", "div4"), required=True)
        g = p.add_mutually_exclusive_group()
        g.add_argument("--n", type=int)
        g.add_argument("--k", type=int)
        p.set_defaults(func=func)
        if name == "search":
            p.add_argument("--exhaustive", action="store_true")
            p.add_argument("--budget", type=int, default=10**8)
            p.add_argument("--quiet", action="store_true", help="no progress on stderr")
        if name == "verify":
            src = p.add_mutually_exclusive_group(required=True)
            src.add_argument("--file")
            src.add_argument("--compact")
            src.add_argument("--vertices", help="comma separated vertex list")
    return ap


def render_table(doc: CertificateDocument) -> str:
    lines = [f"{doc.command}"]
    for k, v in doc.inputs.items():
        if v is not None and v is not False:
            lines.append(f"  input  {k:<16} {v}")
    if isinstance(doc.result, dict):
        for k, v in doc.result.items():
            if isinstance(v, (list, dict)) and len(json.dumps(v)) > 100:
                v = json.dumps(v)[:97] + "..."
            lines.append(f"  result {k:<16} {v}")
    else:
        lines.append(f"  result {doc.result}")
    for c in doc.checks:
        tail = f"  ({c.detail})" if c.detail else ""
        lines.append(f"  check  {c.name:<16} {'PASS' if c.passed else 'FAIL'}{tail}")
    return "\n".join(lines)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        doc = args.func(args)
    except (UsageError, semigroup.SemigroupError, search.SearchError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    print(doc.to_json() if args.json else render_table(doc), file=stdout)
    return EXIT_OK if doc.passed else EXIT_FAILED


def main() -> None:
    sys.exit(run())
