"""Command-line driver for the verification suites.

Exit codes: 0 when every requested check passes, 1 on a mathematical check
failure (the report names a witness), 2 on a usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor

from . import algebra, extension, forms, involutions, representations
from .report import SCHEMA
from .scalars import format_scalar, parse_rat, parse_scalar

TSV_HELP = """\
TSV columns:
  most commands       check, passed, checked, violations, first_witness
  verma-gram          level, dimension, verdict, radical_dim, witness
  series-scan         a, b, verdict, on_line, agrees, violation_n, violation_k, reason
"""


class UsageError(Exception):
    pass


def _scalar_list(text):
    return [parse_scalar(s) for s in text.split(",") if s.strip()]


def _window(n, minimum=2):
    if n < minimum:
        raise UsageError(f"window must be >= {minimum}")
    return n


def _theta_list(args):
    if args.theta:
        return [involutions.parse_params(t) for t in args.theta]
    return involutions.sample_plus() + involutions.sample_minus()


# -- commands ---------------------------------------------------------------------


def cmd_jacobi(args):
    w = algebra.Window(_window(args.window))
    table = algebra.standard_fault() if args.corrupt else algebra.bracket_basis
    reps = [algebra.jacobi_check(w, table)]
    if not args.jacobi_only:
        reps += [
            algebra.antisymmetry_check(w, table),
            algebra.ideal_window_check(w, table),
            algebra.center_check(w, table),
            algebra.grading_check(w, table),
        ]
    return {"reports": [r.to_json() for r in reps]}, all(r.passed for r in reps)


def cmd_involution_verify(args):
    w = algebra.Window(_window(args.window))
    reps = []
    for p in _theta_list(args):
        image = None
        if args.corrupt:
            image = involutions.flipped_beta_image(p)
        reps.append(involutions.axioms_check(p, w, image))
        if not args.corrupt:
            reps.append(involutions.restrict_check_vir_prime(p, w))
    return {"reports": [r.to_json() for r in reps]}, all(r.passed for r in reps)


def cmd_involution_replay(args):
    mu = parse_scalar(args.mu) if args.mu is not None else None
    reps = [involutions.replay_coefficient_recurrence(parse_rat(args.alpha), parse_scalar(args.beta1), parse_scalar(args.betam1), args.bound, mu)]
    for t in args.theta or ():
        reps.append(involutions.replay_y_coefficients(involutions.parse_params(t), args.bound))
    return {"reports": [r.to_json() for r in reps]}, all(r.passed for r in reps)


def cmd_vir_prime(args):
    w = algebra.Window(_window(args.window))
    reps = []
    for p in _theta_list(args):
        reps.append(algebra.vir_prime_bracket_check(w, p))
        reps.append(involutions.restrict_check_vir_prime(p, w))
    return {"reports": [r.to_json() for r in reps]}, all(r.passed for r in reps)


def cmd_verma_gram(args):
    if args.depth < 0:
        raise UsageError("depth must be >= 0")
    wt = representations.Weight(parse_rat(args.h), parse_rat(args.m), parse_rat(args.z))
    p = involutions.parse_params(args.theta)
    if p.kind != "plus":
        raise UsageError("verma-gram needs a plus-family theta")
    levels = [args.level] if args.level is not None else list(range(args.depth + 1))
    if any(d < 0 or d > args.depth for d in levels):
        raise UsageError("level outside 0..depth")
    ctx = forms.FormContext(representations.verma_module(wt, args.depth), p)
    grams = [forms.gram_report(wt, p, d, args.depth, ctx) for d in levels]
    body = {
        "weight": {"h": str(wt.h), "m": str(wt.m), "z": str(wt.z)},
        "theta": p.to_json(),
        "depth": args.depth,
        "compatible": forms.weight_compatible(wt, p),
        "grams": grams,
    }
    if wt.m == 0:
        shape = forms.highest_weight_analysis(wt, p, args.depth)
        body["highest_weight_shape"] = {k: shape[k] for k in ("all_psd", "my_in_radical", "quotient_action_zero")}
    ok = all(g["verdict"] != forms.NON_HERMITIAN for g in grams)
    return body, ok


def _series_cell(a, b, window):
    try:
        res = forms.series_unitarity_feasibility(a, b, window)
        out = res.to_json()
    except forms.ReducibleParameters as exc:
        out = {"verdict": "Reducible", "reason": str(exc)}
    out.update(a=str(a), b=format_scalar(b), on_line=forms.on_unitary_line(b))
    out["agrees"] = (out["verdict"] == "Feasible") == out["on_line"]
    return out


def cmd_series_check(args):
    a, b = parse_rat(args.a), parse_scalar(args.b)
    w = algebra.Window(_window(args.window))
    spec = representations.Aab(a, b)
    reps = [
        representations.sv_lift_bracket_check(spec, w),
        representations.series_shift_iso_check(a, b, w),
    ]
    body = {"reports": [r.to_json() for r in reps], "feasibility": _series_cell(a, b, args.window)}
    return body, all(r.passed for r in reps)


def _cell_job(job):
    return _series_cell(*job)


def cmd_series_scan(args):
    a_vals = [parse_rat(s) for s in args.a.split(",") if s.strip()]
    b_vals = _scalar_list(args.b)
    if not a_vals or not b_vals:
        raise UsageError("need at least one a and one b")
    jobs = [(a, b, args.window) for a in a_vals for b in b_vals]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            cells = list(pool.map(_cell_job, jobs))
    else:
        cells = [_cell_job(j) for j in jobs]
    return {"window": args.window, "cells": cells}, all(c["agrees"] for c in cells)


def cmd_extension(args):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        cfg = extension.ExtensionConfig(parse_rat(args.a), _scalar_list(args.b), _scalar_list(args.d), args.window, args.trivial_dim)
    families = tuple(args.families.split(",")) if args.families else extension.DEFAULT_FAMILIES
    rep = extension.solve(cfg, families)
    body = {"nullity": rep.info["nullity"], "report": rep.to_json(), "warnings": [str(w.message) for w in caught]}
    ok = rep.passed
    if args.compare_window is not None:
        agree = extension.window_agreement(cfg, args.compare_window)
        body["window_agreement"] = agree.to_json()
        ok = ok and agree.passed
    if cfg.a == 0 and parse_scalar("1/2") in cfg.d_list:
        sc = extension.special_case_replay(cfg)
        body["stages"] = sc.info["stages"]
        ok = ok and sc.passed
    return body, ok


# -- output ----------------------------------------------------------------------


def _tsv(command, body):
    lines = []
    if command == "verma-gram":
        lines.append("level\tdimension\tverdict\tradical_dim\twitness")
        for g in body["grams"]:
            lines.append(f"{g['level']}\t{g['dimension']}\t{g['verdict']}\t{g['radical_dim']}\t{','.join(g['witness'])}")
    elif command == "series-scan":
        lines.append("a\tb\tverdict\ton_line\tagrees\tviolation_n\tviolation_k\treason")
        for c in body["cells"]:
            v = c.get("violation", {})
            lines.append(
                "\t".join(
                    str(x)
                    for x in (c["a"], c["b"], c["verdict"], c["on_line"], c["agrees"], v.get("n", ""), v.get("k", ""), c.get("reason", ""))
                )
            )
    else:
        reps = body.get("reports") or [body["report"]]
        lines.append("check\tpassed\tchecked\tviolations\tfirst_witness")
        for r in reps:
            wit = r["witnesses"][0] if r["witnesses"] else ""
            lines.append(f"{r['check']}\t{r['passed']}\t{r['checked']}\t{r['violations']}\t{wit}")
    return "\n".join(lines) + "\n"


COMMANDS = {
    "jacobi": cmd_jacobi,
    "involution-verify": cmd_involution_verify,
    "involution-replay": cmd_involution_replay,
    "vir-prime": cmd_vir_prime,
    "verma-gram": cmd_verma_gram,
    "series-check": cmd_series_check,
    "series-scan": cmd_series_scan,
    "extension": cmd_extension,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="svalg",
        description="Exact verification suites for the Schrodinger-Virasoro algebra.",
        epilog=TSV_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jacobi", parents=[common], help="Jacobi identity and structural checks on a window")
    p.add_argument("--window", type=int, default=16, help="doubled-degree bound N (>= 2)")
    p.add_argument("--corrupt", action="store_true", help="use the bracket table with [L1, M1] -> 2 M2")
    p.add_argument("--jacobi-only", action="store_true", help="skip the antisymmetry/ideal/center/grading checks")

    p = sub.add_parser("involution-verify", parents=[common], help="anti-involution axioms")
    p.add_argument("--theta", action="append", help="e.g. plus:rho=1,beta=0,nu=1 (repeatable; default: sampling set)")
    p.add_argument("--window", type=int, default=12)
    p.add_argument("--corrupt", action="store_true", help="negate the beta part of theta(L_n)")

    p = sub.add_parser("involution-replay", parents=[common], help="coefficient recurrence replays")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta1", required=True)
    p.add_argument("--betam1", required=True)
    p.add_argument("--mu", help="also check beta_{-1} = -alpha^-2 mu conj(beta_1)")
    p.add_argument("--bound", type=int, default=8, help="check |m|, |n| <= bound")
    p.add_argument("--theta", action="append", help="plus-family pack for the Y-coefficient replay")

    p = sub.add_parser("vir-prime", parents=[common], help="Vir' relations and theta on L'_n")
    p.add_argument("--theta", action="append")
    p.add_argument("--window", type=int, default=10)

    p = sub.add_parser("verma-gram", parents=[common], help="Gram matrices of the contravariant form")
    p.add_argument("--h", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--depth", type=int, default=4, help="doubled level cap")
    p.add_argument("--level", type=int, help="only this doubled level")
    p.add_argument("--theta", default="plus:rho=1,beta=0,nu=1")

    p = sub.add_parser("series-check", parents=[common], help="one intermediate-series module")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--window", type=int, default=8)

    p = sub.add_parser("series-scan", parents=[common], help="unitarity feasibility over an (a, b) grid")
    p.add_argument("--a", required=True, help="comma-separated rationals")
    p.add_argument("--b", required=True, help="comma-separated scalars, e.g. 1/2,1/2+1*i")
    p.add_argument("--window", type=int, default=8)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("extension", parents=[common], help="nullspace of the Y_{1/2} extension system")
    p.add_argument("--a", required=True)
    p.add_argument("--b", default="", help="comma-separated b_l")
    p.add_argument("--d", default="", help="comma-separated d_l'")
    p.add_argument("--window", type=int, default=4, help="k ranges over [-K, K]")
    p.add_argument("--trivial-dim", type=int, default=0)
    p.add_argument("--families", help="comma-separated equation families (default: full set)")
    p.add_argument("--compare-window", type=int, help="also check agreement with this larger window")
    return parser


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        body, ok = COMMANDS[args.command](args)
    except (UsageError, ValueError, representations.DepthExceeded) as exc:
        print(f"svalg: error: {exc}", file=sys.stderr)
        return 2
    if args.format == "tsv":
        text = _tsv(args.command, body)
    else:
        doc = {"schema": SCHEMA, "command": args.command, "passed": ok, **body}
        if "reports" in body:
            doc["violations"] = sum(r["violations"] for r in body["reports"])
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
