"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 usage error.
"""

import argparse
import json
import sys

from .chains import compare_bfile, cross_validate, idealizer_chain, normalizer_chain, read_bfile
from .grammar import ParseError
from .liealg import subring_image
from .polyring import LayeringError, PrimeParams
from .structure import (
    UndefinedDegreeError,
    contains_gamma_bound,
    is_normal,
    lower_central_term,
    normal_closure,
    read_subgroup,
    render_key,
    upper_central_series_direct,
)
from .verify import run_all
from .wreath import parse_element, permutation_json, render_element


class UsageError(Exception):
    pass


def _params(args):
    try:
        return PrimeParams(args.p, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _basis_text(params, sub):
    return ", ".join(render_key(params, key) for key in sub.sorted_basis()) or "1"


def cmd_series(args, out):
    params = _params(args)
    direct = upper_central_series_direct(params) if params.basis_size <= 40 else None
    top = params.top
    rows = []
    for i in range(1, top + 2):
        g = lower_central_term(params, i)
        row = {"i": i, "log_order": g.log_order, "order": g.order, "basis": _basis_text(params, g)}
        if direct is not None:
            # gamma_i is Z_(top + 1 - i)
            z = top + 1 - i
            row["upper_index"] = z
            row["coincides"] = z < len(direct) and direct[z] == g
        rows.append(row)
    ok = all(r.get("coincides", True) for r in rows)
    if args.format == "json":
        out.write(json.dumps({"p": params.p, "n": params.n, "series": rows}) + "\n")
    elif args.format == "csv":
        out.write("i,log_order,order,upper_index,coincides,basis\n")
        for r in rows:
            out.write(f"{r['i']},{r['log_order']},{r['order']},{r.get('upper_index', '')},"
                      f"{r.get('coincides', '')},\"{r['basis']}\"\n")
    else:
        out.write(f"# lower central series of W_{params.n}, p={params.p}\n")
        for r in rows:
            verdict = ""
            if "coincides" in r:
                verdict = f"  = Z_{r['upper_index']}: {'yes' if r['coincides'] else 'NO'}"
            out.write(f"gamma_{r['i']}: order {params.p}^{r['log_order']} = {r['order']}{verdict}\n")
            out.write(f"  {r['basis']}\n")
    return 0 if ok else 1


def cmd_closure(args, out):
    params = _params(args)
    try:
        w = parse_element(args.element, params)
        closure = normal_closure(w)
    except (ParseError, LayeringError) as exc:
        raise UsageError(f"cannot parse element: {exc}") from None
    except UndefinedDegreeError as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    k = w.support()[0]
    bound = contains_gamma_bound(closure, k)
    gamma_i = params.p ** (k - 1) + 1
    if args.format == "json":
        out.write(json.dumps({
            "p": params.p, "n": params.n, "element": render_element(w),
            "basis": [render_key(params, key) for key in closure.sorted_basis()],
            "log_order": closure.log_order,
            "gamma": gamma_i, "contains_gamma": bound.contains,
            "log_index": bound.exponent, "bound": bound.bound,
        }) + "\n")
    else:
        out.write(f"normal closure of {render_element(w)}: order {params.p}^{closure.log_order}\n")
        for key in closure.sorted_basis():
            out.write(f"  {render_key(params, key)}\n")
        out.write(
            f"contains gamma_{gamma_i}: {'yes' if bound.contains else 'NO'}; "
            f"log_{params.p} index {bound.exponent} <= {bound.bound}: "
            f"{'yes' if bound.exponent <= bound.bound else 'NO'}\n"
        )
    return 0 if bound.holds else 1


def _load_subgroup(path, params):
    if path is None:
        return None
    with open(path) as fh:
        try:
            sub = read_subgroup(fh.read())
        except ValueError as exc:
            raise UsageError(f"{path}: {exc}") from None
    if sub.params != params:
        raise UsageError(f"{path}: header p={sub.params.p} n={sub.params.n} does not match --p/--n")
    return sub


def _emit_report(report, fmt, out):
    if fmt == "json":
        out.write(report.to_json() + "\n")
    elif fmt == "csv":
        out.write(report.to_csv())
    else:
        out.write(f"# {report.kind} chain, p={report.p} n={report.n}\n")
        for s in report.steps:
            pred = "" if s.predicted is None else f"  predicted {s.predicted}"
            mark = "" if s.predicted is None else ("  ok" if s.predicted == s.logp_index else "  MISMATCH")
            out.write(f"step {s.i}: basis {s.basis}, log_{report.p} index {s.logp_index}{pred}{mark}\n")


def cmd_chain(args, out):
    params = _params(args)
    start = _load_subgroup(args.subgroup, params)
    ok = True
    if args.kind == "both":
        cv = cross_validate(params, args.steps, start)
        ok = cv.agree and cv.group.ok and cv.lie.ok
        if args.format == "json":
            out.write(json.dumps(cv.as_dict()) + "\n")
        else:
            _emit_report(cv.group, args.format, out)
            _emit_report(cv.lie, args.format, out)
            if args.format == "text":
                out.write(f"cross-validation: {'agree' if cv.agree else 'DISAGREE'}\n")
                for d in cv.diffs:
                    out.write(f"  {d}\n")
    else:
        if args.kind == "group":
            report = normalizer_chain(params, args.steps, start)
        else:
            lie_start = None if start is None else subring_image(start)
            report = idealizer_chain(params, args.steps, lie_start)
        ok = report.ok
        _emit_report(report, args.format, out)
    if args.oeis:
        with open(args.oeis) as fh:
            cmp = compare_bfile(params.p, read_bfile(fh.read()))
        out.write(json.dumps({"oeis": cmp}) + "\n")
    return 0 if ok else 1


def cmd_verify(args, out):
    params = _params(args)
    results = run_all(params, seed=args.seed, exhaustive=args.exhaustive)
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        out.write(json.dumps({
            "p": params.p, "n": params.n, "seed": args.seed, "exhaustive": args.exhaustive,
            "checks": [{"name": r.name, "passed": r.passed, "skipped": r.skipped, "detail": r.detail}
                       for r in results],
        }) + "\n")
    else:
        out.write(f"# verify p={params.p} n={params.n} seed={args.seed}\n")
        for r in results:
            out.write(r.line() + "\n")
        out.write(f"{len(results) - len(failed)}/{len(results)} checks passed\n")
    return 1 if failed else 0


def cmd_perm(args, out):
    params = _params(args)
    try:
        w = parse_element(args.element, params)
        out.write(permutation_json(w) + "\n")
    except (ParseError, LayeringError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    return 0


def cmd_subgroup(args, out):
    params = _params(args)
    sub = _load_subgroup(args.subgroup, params)
    if sub is None:
        raise UsageError("--subgroup is required")
    from .chains import normalizer

    norm = normalizer(sub)
    info = {
        "p": params.p, "n": params.n,
        "log_order": sub.log_order,
        "normal": is_normal(sub),
        "normalizer": [render_key(params, k) for k in norm.sorted_basis()],
        "phi_image": [str(k) for k in sorted(subring_image(sub).basis)],
    }
    if args.format == "json":
        out.write(json.dumps(info) + "\n")
    else:
        out.write(f"order {params.p}^{sub.log_order}, normal: {'yes' if info['normal'] else 'no'}\n")
        out.write(f"normalizer: order {params.p}^{norm.log_order}\n")
        for k in norm.sorted_basis():
            out.write(f"  {render_key(params, k)}\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wreathlie",
        description="Sylow p-subgroups of Sym(p^n), their Lie algebras, series and normalizer chains.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True, help="odd prime")
    common.add_argument("--n", type=int, required=True, help="number of wreath levels")
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("series", parents=[common], help="lower/upper central series")
    s.set_defaults(func=cmd_series)

    c = sub.add_parser("closure", parents=[common], help="normal closure of f D_k")
    c.add_argument("element")
    c.set_defaults(func=cmd_closure)

    ch = sub.add_parser("chain", parents=[common], help="normalizer / idealizer chains")
    ch.add_argument("--kind", choices=["group", "lie", "both"], default="both")
    ch.add_argument("--steps", type=int, default=None)
    ch.add_argument("--subgroup", default=None, help="start from this saturated subgroup instead of T")
    ch.add_argument("--oeis", default=None, help="b-file to compare partition counts against")
    ch.set_defaults(func=cmd_chain)

    v = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    v.add_argument("--exhaustive", action="store_true")
    v.set_defaults(func=cmd_verify)

    pm = sub.add_parser("perm", parents=[common], help="export an element as a permutation")
    pm.add_argument("element")
    pm.set_defaults(func=cmd_perm)

    sg = sub.add_parser("subgroup", parents=[common], help="inspect a saturated subgroup file")
    sg.add_argument("--subgroup", default=None)
    sg.set_defaults(func=cmd_subgroup)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "steps", None) is not None and args.steps < 1:
        parser.error("--steps must be positive")
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
