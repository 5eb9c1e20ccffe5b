"""Command-line front end (`occ`)."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .classifier import INVALID, check_exhaustiveness, classify
from .enumerate import DEFAULT_BRANES, FamilyBounds, family
from .formats import (
    OccSyntaxError,
    parse_assignment,
    parse_embedding,
    parse_model,
    parse_occ,
    parse_plan,
    print_occ,
)
from .frobenius import ModelError, builtin_embedding, lemma31, transfers, verify_all, EMBEDDING_KINDS
from .sewing import PlanMismatch, sew
from .surface import canonical_form, component_invariants, euler_char, validate
from .tqft import (
    ProfileMismatch,
    UnlabeledWindow,
    UnsupportedShape,
    check_classifier_consistency,
    evaluate,
    format_map,
    in_profile,
    out_profile,
    shadow_assignment,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from None


def _parse(path: str, parser):
    try:
        return parser(_read(path))
    except OccSyntaxError as exc:
        raise UsageError(f"{path}:{exc.line}:{exc.col}: {exc.message}") from None


class Report:
    """Collects human-readable lines and the matching JSON payload."""

    def __init__(self):
        self.lines: list[str] = []
        self.data: dict = {}

    def emit(self, as_json: bool) -> None:
        if as_json:
            print(json.dumps(self.data, indent=2, sort_keys=True))
        else:
            for line in self.lines:
                print(line)


def _tuple(inv) -> list[int]:
    return list(inv.astuple())


# -- commands -------------------------------------------------------------------


def cmd_invariants(args, rep: Report) -> int:
    c = _parse(args.file, parse_occ)
    rows = []
    for i, comp in enumerate(c.components):
        inv = component_invariants(comp)
        chi = euler_char(comp)
        rep.lines.append(f"component {i}: {inv} chi={chi}")
        rows.append({"component": i, "tuple": _tuple(inv), "chi": chi})
    violations = validate(c)
    for v in violations:
        rep.lines.append(f"violation: {v}")
    rep.data = {"components": rows, "violations": [str(v) for v in violations]}
    return EXIT_FAIL if violations else EXIT_OK


def _verdict_text(v) -> str:
    if v.rule:
        return f"{v.label()} rule={v.rule} cite={v.citation}"
    if v.btype:
        return f"{v.label()} type={v.btype} cite={v.citation}"
    if v.missing:
        return f"{v.label()} missing={v.missing}"
    return f"{v.label()} reason={v.reason}"


def _verdict_json(v) -> dict:
    return {"verdict": v.label(), "rule": v.rule, "citation": v.citation or None, "btype": v.btype}


def cmd_classify(args, rep: Report) -> int:
    c = _parse(args.file, parse_occ)
    bad = [v for v in validate(c) if v.kind != "PositiveBoundaryViolation"]
    if bad:
        for v in bad:
            rep.lines.append(f"violation: {v}")
        rep.data = {"violations": [str(v) for v in bad]}
        return EXIT_FAIL
    result = classify(c, args.d, assume_low_dims=not args.strict_dims)
    rows = []
    for i, (inv, v) in enumerate(result.components):
        rep.lines.append(f"component {i}: {inv} {_verdict_text(v)}")
        rows.append({"component": i, "tuple": _tuple(inv), **_verdict_json(v)})
    rep.lines.append(f"overall: {_verdict_text(result.overall)}")
    rep.data = {"components": rows, "overall": _verdict_json(result.overall)}
    return EXIT_FAIL if result.overall.kind == INVALID else EXIT_OK


def cmd_sew(args, rep: Report) -> int:
    a = _parse(args.a, parse_occ)
    b = _parse(args.b, parse_occ)
    plan = _parse(args.plan, parse_plan)
    try:
        c = sew(a, b, plan)
    except PlanMismatch as exc:
        rep.lines.append(f"plan mismatch: {exc}")
        rep.data = {"error": str(exc)}
        return EXIT_FAIL
    text = print_occ(c)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    rep.lines.extend(text.rstrip("\n").splitlines())
    rep.data = {
        "cobordism": text,
        "invariants": [_tuple(component_invariants(comp)) for comp in c.components],
    }
    return EXIT_OK


def _assignment(args, c):
    if args.assignment:
        return _parse(args.assignment, parse_assignment)
    if args.model != "shadow":
        raise UsageError(f"unknown model {args.model!r} (use 'shadow' or --assignment)")
    if args.d is None or args.chi_m is None:
        raise UsageError("--model shadow needs --d and --chi-M")
    if args.d < 1:
        raise UsageError("--d must be at least 1")
    return shadow_assignment(args.d, args.chi_m, c.branes)


def cmd_eval(args, rep: Report) -> int:
    c = _parse(args.file, parse_occ)
    ga = _assignment(args, c)
    try:
        m = evaluate(c, ga)
    except (UnlabeledWindow, UnsupportedShape, ProfileMismatch) as exc:
        rep.lines.append(f"cannot evaluate: {exc}")
        rep.data = {"error": str(exc)}
        return EXIT_FAIL

    def profile(strands):
        return ["C" if t == ("C",) else f"O[{t[1]},{t[2]}]" for t, _ in strands]

    ins, outs = profile(in_profile(c)), profile(out_profile(c))
    lines = format_map(m, ga.space)
    rep.lines.append("inputs: " + (" (x) ".join(ins) or "1"))
    rep.lines.append("outputs: " + (" (x) ".join(outs) or "1"))
    rep.lines.extend(lines)
    rep.data = {"inputs": ins, "outputs": outs, "map": lines, "zero": m.is_zero()}
    return EXIT_OK


def _embedding(args):
    if args.embedding_file:
        return parse_embedding(_read(args.embedding_file), Path(args.embedding_file).parent).check()
    if args.embedding not in EMBEDDING_KINDS:
        raise UsageError(f"unknown embedding {args.embedding!r}; choose from {', '.join(EMBEDDING_KINDS)}")
    if args.model_file:
        model = _parse(args.model_file, parse_model).check()
        return EMBEDDING_KINDS[args.embedding](model).check()
    return builtin_embedding(args.model, args.embedding)


def cmd_verify(args, rep: Report) -> int:
    try:
        e = _embedding(args)
    except ModelError as exc:
        raise UsageError(str(exc)) from None
    results = verify_all(e)
    rows = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        note = " (trivial)" if r.trivial else ""
        line = f"identity {r.k}: {status} checked={r.checked}{note}"
        if r.witness:
            line += f" witness={r.witness}"
        rep.lines.append(line)
        rows.append({"k": r.k, "passed": r.passed, "checked": r.checked, "trivial": r.trivial, "witness": r.witness})
    tp = transfers(e)
    M = e.target
    lemma = [lemma31(e, M.basis(i), tp) for i in range(M.n)]
    lemma_ok = all(x.equal for x in lemma)
    all_ok = all(r.passed for r in results)
    rep.lines.append(f"embedding: {e.source.name} -> {e.target.name} (l={e.source.dim}, d={e.target.dim})")
    rep.lines.append(f"lemma31: {'PASS' if lemma_ok else 'FAIL'} classes={len(lemma)}")
    rep.lines.append(f"identities 1..9: {'PASS' if all_ok else 'FAIL'}")
    rep.data = {
        "embedding": {"source": e.source.name, "target": e.target.name},
        "identities": rows,
        "lemma31": lemma_ok,
        "passed": all_ok and lemma_ok,
    }
    return EXIT_OK if all_ok and lemma_ok else EXIT_FAIL


def cmd_enumerate(args, rep: Report) -> int:
    if args.bound < 3:
        raise UsageError("--bound must be at least 3")
    report = check_exhaustiveness(args.bound)
    survivors = sorted(report.survivors_iv)
    rep.lines.append(f"bound: {args.bound}")
    rep.lines.append(f"tuples checked: {report.checked}")
    rep.lines.append(f"vanishing: {report.vanishing}")
    for t in sorted(report.by_type):
        rep.lines.append(f"type {t}: {report.by_type[t]}")
    rep.lines.append("survivors (q,s) with g=w=t=0: " + " ".join(f"({q},{s})" for q, s in survivors))
    rep.lines.append(f"counterexamples: {len(report.counterexamples)}")
    for tup, why in report.counterexamples[:10]:
        rep.lines.append(f"counterexample: {tup} {why}")
    rep.data = {
        "bound": args.bound,
        "checked": report.checked,
        "vanishing": report.vanishing,
        "by_type": dict(sorted(report.by_type.items())),
        "survivors": [list(x) for x in survivors],
        "counterexamples": [[list(t), why] for t, why in report.counterexamples],
    }
    ok = report.passed
    if args.shadow:
        ga = shadow_assignment(args.d, args.chi_m, DEFAULT_BRANES)
        bounds = FamilyBounds(max_mixed=args.max_mixed)
        cons = check_classifier_consistency(family(DEFAULT_BRANES, bounds), ga)
        rep.lines.append(f"shadow family checked: {cons.checked}")
        rep.lines.append(f"shadow vanishing verdicts: {cons.vanishing}")
        rep.lines.append(f"shadow counterexamples: {len(cons.counterexamples)}")
        rep.lines.append("shadow witnesses: " + " ".join(sorted(cons.witnesses)))
        rep.data["shadow"] = {
            "checked": cons.checked,
            "vanishing": cons.vanishing,
            "counterexamples": len(cons.counterexamples),
            "witnesses": sorted(cons.witnesses),
        }
        ok = ok and cons.passed
    rep.lines.append(f"exhaustiveness: {'PASS' if ok else 'FAIL'}")
    rep.data["passed"] = ok
    return EXIT_OK if ok else EXIT_FAIL


def cmd_canonical(args, rep: Report) -> int:
    c = _parse(args.file, parse_occ)
    text = print_occ(canonical_form(c))
    rep.lines.extend(text.rstrip("\n").splitlines())
    rep.data = {"cobordism": text}
    return EXIT_OK


# -- wiring -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")

    p = argparse.ArgumentParser(prog="occ", description="Open-closed string-topology cobordism toolkit.")
    p.add_argument("--version", action="version", version=f"occ {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariants", parents=[common], help="invariant tuple of each component")
    s.add_argument("file")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("classify", parents=[common], help="vanishing verdicts and types")
    s.add_argument("file")
    s.add_argument("--d", type=int, required=True, help="dimension of the ambient manifold")
    s.add_argument(
        "--strict-dims",
        action="store_true",
        help="use actual brane dimensions instead of assuming all are below d",
    )
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("sew", parents=[common], help="glue two cobordisms along a plan")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--plan", required=True)
    s.add_argument("-o", "--output", help="also write the result to this file")
    s.set_defaults(func=cmd_sew)

    s = sub.add_parser("eval", parents=[common], help="evaluate a cobordism as a linear map")
    s.add_argument("file")
    s.add_argument("--model", default="shadow")
    s.add_argument("--d", type=int)
    s.add_argument("--chi-M", dest="chi_m", type=int)
    s.add_argument("--assignment", help="generator assignment file")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("verify-transfers", parents=[common], help="check the transfer identities")
    s.add_argument("--model", default="s2", help="built-in model name (pt, s1..s4, t2, cp2, AxB)")
    s.add_argument("--model-file")
    s.add_argument("--embedding", default="point", help="point, two-points, identity, diagonal, circle")
    s.add_argument("--embedding-file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("enumerate", parents=[common], help="exhaustiveness check of the classification")
    s.add_argument("--bound", type=int, default=4)
    s.add_argument("--shadow", action="store_true", help="also check soundness on the cobordism family")
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--chi-M", dest="chi_m", type=int, default=2)
    s.add_argument("--max-mixed", type=int, default=2)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("canonical", parents=[common], help="canonical representative")
    s.add_argument("file")
    s.set_defaults(func=cmd_canonical)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = Report()
    try:
        code = args.func(args, rep)
    except UsageError as exc:
        print(f"occ: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rep.emit(args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
