"""Command-line front end.

Every subcommand prints one JSON report on standard output. Exit status 0
means the verdict is true, 1 means it is false (the report carries the
certificate), 2 means the input could not be used.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Sequence

from . import families, higgs, schubert
from .arith import (
    check_distinct,
    check_generic_selection,
    find_integral_subset,
    parse_rational,
)
from .io import (
    SCHEMA,
    InputError,
    bundle_from_json,
    classes_from_json,
    digest,
    model_from_json,
    model_to_json,
    pretty,
    to_jsonable,
    weights_from_json,
    weights_to_json,
)
from .parabolic import par_deg, par_slope, pardeg_bounds_check

COMMANDS = ("pardeg", "genericity", "stability", "minimal-energy", "bounds", "construct",
            "ds-exists", "gw", "gw-cert", "rigidity", "batch")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message, "/argv")


def _read_json(path: str, what: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {what}: {exc.strerror}", "/") from None
    try:
        return json.loads(text, parse_float=_refuse_float)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {what}: {exc.msg} at line {exc.lineno}", "/") from None


def _refuse_float(text: str):
    raise InputError(f"decimal number {text} is not exact; use a \"p/q\" string", "/")


def _rat(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc), "/argv") from None


def _ints(text: str, sep: str = ",") -> list[int]:
    try:
        return [int(x) for x in text.split(sep) if x.strip()]
    except ValueError:
        raise InputError(f"expected integers separated by {sep!r}: {text!r}", "/argv") from None


def _int_lists(text: str) -> list[list[int]]:
    """Parse ``"[1],[1,1],[]"`` into lists of integers."""
    try:
        value = json.loads(f"[{text}]")
    except json.JSONDecodeError:
        raise InputError(f"cannot parse class list {text!r}", "/argv") from None
    if not all(isinstance(c, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in c)
               for c in value):
        raise InputError("classes must be lists of integers", "/argv")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="parahiggs", description=__doc__.strip().splitlines()[0])
    p.add_argument("--timing", action="store_true", help="add wall time (breaks byte-identity)")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("pardeg", help="parabolic degree and slope of a split bundle")
    s.add_argument("--bundle", required=True)

    s = sub.add_parser("genericity", help="distinctness and the two genericity tests")
    s.add_argument("--weights", required=True)

    for name in ("stability", "construct"):
        s = sub.add_parser(name, help="explicit families with certificates")
        _example_args(s, required=True)

    s = sub.add_parser("minimal-energy", help="Hodge length one check")
    s.add_argument("--model")
    _example_args(s, required=False)

    s = sub.add_parser("bounds", help="degree bounds")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--theorem", action="store_true")
    g.add_argument("--main", action="store_true")
    g.add_argument("--v1", action="store_true")
    g.add_argument("--model")
    s.add_argument("--n", type=int)
    s.add_argument("--r", type=int)
    s.add_argument("--d", type=int)
    s.add_argument("--rank-v", help="ranks of V^1..V^{r-1}, comma separated")
    s.add_argument("--rank-coker", help="cokernel ranks for k = 2..r-1; default: lemma slack")

    s = sub.add_parser("ds-exists", help="SU(n) Deligne-Simpson existence")
    s.add_argument("--classes", required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--mode", choices=("degree", "strict"), default="degree")
    s.add_argument("--diagnostic", action="store_true", help="use every nonzero invariant")

    s = sub.add_parser("gw", help="Grassmannian Gromov-Witten number")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--classes", required=True, help='partitions such as "[1],[1],[2,1]"')
    s.add_argument("--subsets", action="store_true", help="read classes as subsets of 1..n")
    s.add_argument("--degree", type=int, default=0)

    s = sub.add_parser("gw-cert", help="Gromov-Witten certificate for a destabilizing piece")
    s.add_argument("--model")
    _example_args(s, required=False)

    s = sub.add_parser("rigidity", help="Katz rigidity count")
    s.add_argument("--n", type=int, required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--dims", help="centralizer dimensions, comma separated")
    g.add_argument("--multiplicities", help='eigenvalue multiplicities, e.g. "1,1;1,1;1,1"')

    s = sub.add_parser("batch", help="run a manifest of commands")
    s.add_argument("--manifest", required=True)
    return p


def _example_args(s, required: bool):
    s.add_argument("--example", choices=("6.2", "6.9"), required=required)
    s.add_argument("--n", type=int)
    s.add_argument("--a", type=int)
    s.add_argument("--eps")
    s.add_argument("--eps-vec", help="comma separated rationals")
    s.add_argument("--genericity", action="store_true", help="also run the selection test")


def _example_model(args):
    if args.example == "6.2":
        if args.n is None or args.a is None:
            raise InputError("--n and --a are required for the two-step family", "/argv")
        eps = _rat(args.eps) if args.eps else None
        ev = [_rat(x) for x in args.eps_vec.split(",")] if args.eps_vec else None
        try:
            params = families.Example62Params.suggest(args.n, args.a, eps, ev)
        except ValueError as exc:
            raise InputError(str(exc), "/argv") from None
        M, _ = families.build_example_62(params)
        return M, params
    eps = _rat(args.eps) if args.eps else Fraction(1, 36)
    try:
        return families.build_example_69(eps), eps
    except ValueError as exc:
        raise InputError(str(exc), "/argv") from None


def _cmd_pardeg(args):
    obj = _read_json(args.bundle, "bundle")
    E = bundle_from_json(obj)
    ok = pardeg_bounds_check(E)
    return ok, obj, {"par_deg": par_deg(E), "par_slope": par_slope(E), "degree": E.degree,
                     "rank": E.rank, "degree_bounds_hold": ok}


def _cmd_genericity(args):
    obj = _read_json(args.weights, "weights")
    w = weights_from_json(obj)
    multiset = w.multiset()
    idx = find_integral_subset(multiset)
    out = {
        "distinct": check_distinct(w),
        "subset_sum": {"generic": idx is None,
                       "witness": None if idx is None else [multiset[i] for i in idx]},
    }
    if out["distinct"]:
        ok, wit = check_generic_selection(w)
        out["selection"] = {"generic": ok,
                            "witness": None if wit is None else {"r": wit.r, "selection": wit.selection,
                                                                 "total": wit.total}}
    else:
        ok = False
        out["selection"] = {"generic": None, "reason": "weights are not distinct"}
    return ok, weights_to_json(w), out


def _certify(args):
    M, params = _example_model(args)
    if args.example == "6.2":
        cert, me, info = families.certify_example_62(M, params)
        extra = {"params": {"n": params.n, "a": params.a, "eps": params.eps,
                            "eps_vec": params.eps_vec, "d": params.d}}
        if args.genericity:
            ok, wit = families.example_62_genericity(M)
            extra["selection_generic"] = ok
            extra["selection_witness"] = wit
    else:
        cert, me, info = families.certify_example_69(M)
        extra = {"params": {"eps": params}}
    return M, cert, me, info, extra


def _cert_json(cert):
    return {"stable": cert.stable,
            "entries": [{"label": e.label, "value": e.value, "kind": e.kind} for e in cert.entries],
            "assumptions": list(cert.assumptions), "extra": cert.extra}


def _cmd_stability(args):
    M, cert, me, info, extra = _certify(args)
    return cert.stable, model_to_json(M), {"certificate": _cert_json(cert), **extra}


def _cmd_construct(args):
    M, cert, me, info, extra = _certify(args)
    E = M.pieces[0]
    for P in M.pieces[1:]:
        E = E + P
    ok = info["par_deg"] == 0 and cert.stable and me
    return ok, model_to_json(M), {
        "model": model_to_json(M), "weights": weights_to_json(E.weight_system()),
        "certificate": _cert_json(cert), "minimal_energy": me, **info, **extra}


def _cmd_minimal_energy(args):
    if args.model:
        obj = _read_json(args.model, "model")
        M = model_from_json(obj)
    elif args.example:
        M, _ = _example_model(args)
        obj = model_to_json(M)
    else:
        raise InputError("give --model or --example", "/argv")
    try:
        ok, report = higgs.minimal_energy_check(M)
    except (higgs.MissingDataError, ValueError) as exc:
        raise InputError(str(exc), "/ker_split") from None
    return ok, obj, {"minimal_energy": ok, "report": report}


def _report_json(b: higgs.BoundReport):
    return {"label": b.label, "lhs": b.lhs, "relation": b.relation, "rhs": b.rhs,
            "holds": b.holds, "chain": [[k, v] for k, v in b.chain]}


def _need(args, *names):
    for name in names:
        if getattr(args, name.replace("-", "_")) is None:
            raise InputError(f"--{name} is required here", "/argv")


def _cmd_bounds(args):
    if args.theorem:
        _need(args, "n", "r")
        try:
            b = higgs.theorem_bound(args.n, args.r)
        except ValueError as exc:
            raise InputError(str(exc), "/argv") from None
        ok = higgs.theorem_links_hold(b)
        return ok, {"n": args.n, "r": args.r}, {"theorem": _report_json(b)}
    if args.main or args.v1:
        _need(args, "r", "rank-v")
        rv = _ints(args.rank_v)
        if len(rv) != args.r - 1:
            raise InputError(f"--rank-v needs {args.r - 1} entries", "/argv")
        if args.v1:
            _need(args, "d")
            bound, top = higgs.pardeg_V1_lower_bound(rv, args.d, args.r)
            return True, {"r": args.r, "rank_v": rv, "d": args.d}, {
                "par_deg_V1_lower_bound": bound, "deg_V_top": top}
        rc = _ints(args.rank_coker) if args.rank_coker else None
        coker = higgs.slack_cokernel_ranks(rv, args.r) if rc is None else rc
        try:
            b = higgs.main_bound(rv, coker, args.r, args.d)
        except ValueError as exc:
            raise InputError(str(exc), "/argv") from None
        return b.holds, {"r": args.r, "rank_v": rv, "rank_coker": rc, "d": args.d}, {
            "main": _report_json(b), "rank_coker_used": coker}
    obj = _read_json(args.model, "model")
    M = model_from_json(obj)
    if M.r < 3:
        raise InputError("bounds on a model need at least three graded pieces", "/pieces")
    try:
        reports = higgs.coker_degree_bounds(M) + higgs.rank_defect_bound(M)
    except higgs.MissingDataError as exc:
        raise InputError(str(exc), "/ker_split") from None
    return all(b.holds for b in reports), obj, {"bounds": [_report_json(b) for b in reports]}


def _cmd_ds_exists(args):
    obj = _read_json(args.classes, "classes")
    cs = classes_from_json(obj)
    if not cs:
        raise InputError("need at least one class", "/classes")
    if args.n is not None and any(c.n != args.n for c in cs):
        raise InputError(f"every class must have {args.n} entries", "/classes")
    v = schubert.su_existence(cs, mode=args.mode, require_one=not args.diagnostic)
    return v.exists, obj, {"exists": v.exists, "mode": v.mode, "inequalities_checked": v.checked,
                           "violations": v.violations}


def _cmd_gw(args):
    lists = _int_lists(args.classes)
    try:
        if args.subsets:
            q = schubert.GWQuery.from_subsets(args.k, args.n, lists, args.degree)
        else:
            q = schubert.GWQuery(args.k, args.n, tuple(tuple(c) for c in lists), args.degree)
    except ValueError as exc:
        raise InputError(str(exc), "/argv") from None
    value, flag = schubert.gw_invariant(q)
    return value != 0, {"k": q.k, "n": q.n, "classes": q.classes, "degree": q.degree}, {
        "value": value, "dimension_ok": flag, "classes": q.classes}


def _cmd_gw_cert(args):
    if args.model:
        obj = _read_json(args.model, "model")
        M = model_from_json(obj)
    elif args.example:
        M, _ = _example_model(args)
        obj = model_to_json(M)
    else:
        raise InputError("give --model or --example", "/argv")
    try:
        c = schubert.gw_certificate(M)
    except ValueError as exc:
        raise InputError(str(exc), "/pieces/0") from None
    return c.invariant != 0, obj, {
        "subsets": c.subsets, "degree": c.query.degree, "k": c.query.k, "n": c.query.n,
        "partitions": c.query.classes, "modified_degree": c.modified_degree,
        "lam_sum": c.lam_sum, "invariant": c.invariant, "dimension_ok": c.dimension_ok,
        "claim": c.claim, "theta": [c_.theta for c_ in c.classes]}


def _cmd_rigidity(args):
    if args.dims:
        dims = _ints(args.dims)
    else:
        dims = [higgs.centralizer_dim(_ints(block)) for block in args.multiplicities.split(";")]
    try:
        ok = higgs.katz_rigidity(args.n, dims)
    except ValueError as exc:
        raise InputError(str(exc), "/argv") from None
    k = len(dims)
    return ok, {"n": args.n, "dims": dims}, {
        "rigid": ok, "count": (2 - k) * args.n ** 2 + sum(dims), "dims": dims}


def _cmd_batch(args):
    obj = _read_json(args.manifest, "manifest")
    cmds = obj.get("commands") if isinstance(obj, dict) else obj
    if not isinstance(cmds, list):
        raise InputError("manifest must be a list of commands or {\"commands\": [...]}", "/")
    results = []
    worst = 0
    for i, entry in enumerate(cmds):
        if not isinstance(entry, list) or not all(isinstance(x, str) for x in entry):
            code, rep = 2, {"error": "command must be a list of strings", "pointer": f"/commands/{i}"}
        elif entry and entry[0] == "batch":
            code, rep = 2, {"error": "nested batch manifests are not run", "pointer": f"/commands/{i}"}
        else:
            code, rep = run(entry)
        results.append({"argv": entry, "exit": code, "report": rep})
        worst = max(worst, code)
    summary = [[" ".join(r["argv"]) if isinstance(r["argv"], list) else str(r["argv"]), r["exit"]]
               for r in results]
    return worst, obj, {"results": results, "summary": summary}


_HANDLERS = {
    "pardeg": _cmd_pardeg,
    "genericity": _cmd_genericity,
    "stability": _cmd_stability,
    "construct": _cmd_construct,
    "minimal-energy": _cmd_minimal_energy,
    "bounds": _cmd_bounds,
    "ds-exists": _cmd_ds_exists,
    "gw": _cmd_gw,
    "gw-cert": _cmd_gw_cert,
    "rigidity": _cmd_rigidity,
    "batch": _cmd_batch,
}


def run(argv: Sequence[str]) -> tuple[int, dict]:
    """Run one command; returns the exit code and the report as plain JSON data."""
    argv = list(argv)
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise InputError(f"choose a command from {', '.join(COMMANDS)}", "/argv")
        verdict, inputs, result = _HANDLERS[args.command](args)
    except InputError as exc:
        return 2, {"schema": SCHEMA, "command": argv, "error": exc.args[0], "pointer": exc.pointer}
    if args.command == "batch":
        code = verdict
        verdict = code == 0
    else:
        code = 0 if verdict else 1
    report = {
        "schema": SCHEMA,
        "command": argv,
        "input_digest": digest(inputs),
        "verdict": bool(verdict),
        "result": to_jsonable(result),
    }
    if args.timing:
        report["wall_time_us"] = int((time.perf_counter() - start) * 1e6)
    return code, report


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, report = run(argv)
    sys.stdout.write(pretty(report) + "\n")
    if code == 2:
        sys.stderr.write(f"parahiggs: {report['pointer']}: {report['error']}\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
