"""Command-line front end.

Subcommands:
  verify-shalika    geometric + completeness + hecke pipelines for one cell
                    or the default grid
  verify-deltap     hecke pipeline for the pair setting
  enumerate-cosets  list double coset representatives with verdicts
  hecke-check       commutativity and dimension of one convolution algebra
  properties        seeded random identity suites

Exit codes: 0 all verdicts hold, 1 mathematical counterexample, 2 usage or
budget error.
"""

import argparse
import json
import sys

from .field import Field, field_from_spec
from .groups import DeltaPContext, ShalikaContext
from .campaign import (Campaign, default_campaign, render_report,
                       run_campaign, run_geometric_cell, run_properties,
                       run_hecke_deltap, run_hecke_shalika,
                       run_completeness_cell, twist_list, chi_list)
from .cosets import (BudgetError, admissible_from_scan, necessary_conditions,
                     representatives, scan_representative, witness_from_scan)


def _add_common(p):
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--q", type=str, default=None, help="field size, e.g. 3 or 2^2")
    p.add_argument("--modulus", type=str, default=None,
                   help="comma separated modulus coefficients, constant first")
    p.add_argument("--twist", type=str, default="0,0",
                   help="determinant exponents a1,a2")
    p.add_argument("--additive-twist", type=int, default=1, dest="c")
    p.add_argument("--chi", type=str, default="0,0",
                   help="pair character exponents x1,x2")
    p.add_argument("--max-group-order", type=int, default=10 ** 5)
    p.add_argument("--max-subgroup-order", type=int, default=10 ** 6)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--format", type=str, choices=("text", "json"),
                   default="text")


def _field(args):
    return field_from_spec(args.q or "2", args.modulus)


def _pair(text):
    a, b = text.split(",")
    return int(a), int(b)


def _emit(args, text, payload):
    out = text if args.format == "text" else json.dumps(payload, indent=2,
                                                        default=str) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def cmd_verify_shalika(args):
    if args.n is None and args.m is None and args.q is None:
        campaign = default_campaign(seed=args.seed, jobs=args.jobs)
        campaign.max_group_order = args.max_group_order
        campaign.max_subgroup_order = args.max_subgroup_order
        text, code, results = run_campaign(campaign)
        _emit(args, text, results)
        return code
    if args.n is None or args.m is None:
        print("need both --n and --m (or neither for the default grid)",
              file=sys.stderr)
        return 2
    f = _field(args)
    q = f.q
    cells = [(q, args.n, args.m)]
    campaign = Campaign(shalika_cells=cells, deltap_cells=[], seed=args.seed,
                        max_group_order=args.max_group_order,
                        max_subgroup_order=args.max_subgroup_order,
                        jobs=args.jobs,
                        checks=("geometric", "completeness", "hecke"))
    text, code, results = run_campaign(campaign)
    _emit(args, text, results)
    return code


def cmd_verify_deltap(args):
    f = _field(args)
    n = args.n if args.n is not None else 1
    m = args.m if args.m is not None else 1
    rows = [run_hecke_deltap(f.q, n, m, x, args.max_group_order)
            for x in chi_list(f.q)]
    results = {"hecke": rows}
    text, ok = render_report(results, args.seed)
    _emit(args, text, results)
    if any("skip" in r for r in rows):
        return 2 if all("skip" in r for r in rows) else (0 if ok else 1)
    return 0 if ok else 1


def cmd_enumerate_cosets(args):
    f = _field(args)
    n = args.n if args.n is not None else 1
    m = args.m if args.m is not None else 1
    a1, a2 = _pair(args.twist)
    ctx = ShalikaContext(f, n, m, a1=a1, a2=a2, c=args.c)
    lines = []
    payload = []
    code = 0
    try:
        for pos, record in enumerate(representatives(ctx)):
            scan = scan_representative(ctx, record.rep,
                                       args.max_subgroup_order)
            adm, _ = admissible_from_scan(ctx, scan, "psi_u")
            wit = witness_from_scan(ctx, scan) if adm else None
            conds = necessary_conditions(ctx, record)
            idx = record.index
            verdict = "invariant" if (adm and wit is not None) else (
                "ADMISSIBLE-NO-WITNESS" if adm else "not-admissible")
            if adm and wit is None:
                code = 1
            lines.append("rep %d index=(%d,%d,%d,%d) admissible=%s %s"
                         % (pos, idx.k1, idx.k2, idx.t, idx.s,
                            "yes" if adm else "no", verdict))
            payload.append({"rep": pos,
                            "index": (idx.k1, idx.k2, idx.t, idx.s),
                            "matrix": record.rep.to_text(),
                            "admissible": adm, "verdict": verdict,
                            "conditions": conds})
    except BudgetError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    _emit(args, "\n".join(lines) + "\n", payload)
    return code


def cmd_hecke_check(args):
    f = _field(args)
    n = args.n if args.n is not None else 1
    m = args.m if args.m is not None else 1
    a1, a2 = _pair(args.twist)
    row = run_hecke_shalika(f.q, n, m, (a1, a2, args.c),
                            args.max_group_order)
    if "skip" in row:
        print(row["skip"], file=sys.stderr)
        return 2
    text = ("q=%d n=%d m=%d cosets=%d dimension=%d compatible=%d"
            " commutative=%s\n"
            % (f.q, n, m, row["double_cosets"], row["dimension"],
               row["compatible_direct"], "yes" if row["commutative"] else "NO"))
    _emit(args, text, row)
    return 0 if row["ok"] else 1


def cmd_properties(args):
    rows = run_properties(args.seed)
    results = {"properties": rows}
    text, ok = render_report(results, args.seed)
    _emit(args, text, results)
    return 0 if ok else 1


def main(argv=None):
    parser = argparse.ArgumentParser(prog="shalika")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in (("verify-shalika", cmd_verify_shalika),
                     ("verify-deltap", cmd_verify_deltap),
                     ("enumerate-cosets", cmd_enumerate_cosets),
                     ("hecke-check", cmd_hecke_check),
                     ("properties", cmd_properties)):
        p = sub.add_parser(name)
        _add_common(p)
        p.set_defaults(fn=fn)
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
