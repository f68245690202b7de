"""Command-line entry point.

Checkpoints: with --checkpoint-dir, each elliptic trace search appends one
line per finished shard to trace_<q>_<t>.ckpt:

    <q> <t> <shard-id> <best> <witness>

where <best> is the exact best count in that shard or "<F" when nothing
reached the floor F, and <witness> is a comma-separated coefficient vector
or "-".  Rerunning with the same directory skips the recorded shards.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .case_ledger import (
    BUDGETS,
    bounds_report,
    emit_report,
    load_ledger,
    run_all,
    run_case,
    verify_table,
)
from .cover_search import double_covers_given_trace
from .finite_fields import field_of_order


def _write(args, payload: dict, text: str) -> None:
    print(text, end="" if text.endswith("\n") else "\n")
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")


def cmd_verify_table(args) -> bool:
    ledger = load_ledger(args.ledger)
    rep = verify_table(ledger.witnesses)
    lines = []
    for w, c in zip(ledger.witnesses, rep.checks):
        mark = "ok " if c.ok else "BAD"
        lines.append(f"{mark} q={c.q:<3} N={c.N:<4} count={c.count} genus={c.genus}  {w.base or 'P1'} / {w.cover}")
    lines.append(f"{rep.passed}/{len(rep.checks)} rows verified")
    _write(args, rep.to_dict(), "\n".join(lines))
    return rep.ok


def cmd_run_case(args) -> bool:
    ledger = load_ledger(args.ledger)
    rec = ledger.case(args.q, args.n)
    out = run_case(rec, args.budget, workers=args.workers, checkpoint_dir=args.checkpoint_dir)
    _write(args, out.to_dict(), f"({out.q}, {out.N}): {out.status}")
    return out.status in ("eliminated", "external")


def cmd_run_all(args) -> bool:
    ledger = load_ledger(args.ledger)
    report = run_all(ledger, args.budget, workers=args.workers, checkpoint_dir=args.checkpoint_dir)
    print(emit_report(report, "text"), end="")
    if args.out:
        Path(args.out).write_text(emit_report(report, "json"))
    return all(r.status in ("matches", "pending") for r in report.rows)


def cmd_report(args) -> bool:
    """Report with witnesses only; useful as a quick smoke test of the table layout."""
    ledger = load_ledger(args.ledger)
    report = bounds_report(ledger, [], verify_table(ledger.witnesses).checks)
    print(emit_report(report, "text"), end="")
    if args.out:
        Path(args.out).write_text(emit_report(report, "json"))
    return True


def cmd_search_trace(args) -> bool:
    F = field_of_order(args.q)
    out = double_covers_given_trace(F, args.t, floor=args.floor, workers=args.workers,
                                    checkpoint_dir=args.checkpoint_dir)
    _write(args, out.to_dict(), f"q={args.q} t={args.t}: max {out.max_points}")
    return out.max_points is not None or args.floor > 0


def cmd_search_hyper(args) -> bool:
    from .special_families import hyperelliptic_order4_search

    out = hyperelliptic_order4_search(field_of_order(args.q), workers=args.workers)
    _write(args, out.to_dict(), f"q={args.q} order-4 hyperelliptic: max {out.max_points}")
    return out.max_points is not None


def cmd_search_kummer(args) -> bool:
    from .special_families import kummer3_search, kummer5_search

    F = field_of_order(args.q)
    if args.m == 5:
        out = kummer5_search(F)
    elif args.m == 3:
        if args.t is None:
            raise SystemExit("search-kummer --m 3 needs --t")
        out = kummer3_search(F, args.t)
    else:
        raise SystemExit("--m must be 3 or 5")
    _write(args, out.to_dict(), f"q={args.q} m={args.m}: max {out.max_points}")
    return out.max_points is not None


def cmd_hermitian(args) -> bool:
    from .hermitian import hermitian_case

    res = hermitian_case(args.case)
    lines = [f"{args.case} (d_K = {res['d_K']})"]
    for f in res["forms"]:
        if f["discharged_by"] == "diagonal":
            lines.append(f"  {f['form']}: 2 on the diagonal of 2P")
        else:
            lines.append(f"  {f['form']}: {f['total']} pushforwards, {f['with_length_two']} with a length-2 vector,"
                         f" classes {f['classes']}, involution {f['involution_ok']}")
    lines.append("ok" if res["ok"] else "FAILED")
    _write(args, res, "\n".join(lines))
    return res["ok"]


def cmd_zeta5(args) -> bool:
    from . import cyclotomic5 as z5

    if args.action == "covering":
        rep = z5.covering_radius_check(args.denominators)
        _write(args, rep.to_dict(), f"max sampled distance {rep.max_distance} over {rep.cosets_checked} cosets")
        return rep.ok
    if args.action == "reduce":
        from .case_ledger import reduction_sample

        res = reduction_sample(args.count, args.seed)
        _write(args, res, f"reduced {res['reduced']}/{res['instances']} forms to the identity")
        return res["ok"]
    results = {}
    for q, h in ((11, [29, 11, 1]), (61, [209, 29, 1])):
        rep = z5.verify_frobenius_cm(q, z5.quartic_from_real_weil(q, h))
        results[str(q)] = rep.to_dict()
    text = "\n".join(f"q={q}: root {r['root']}, ok={r['ok']}" for q, r in results.items())
    _write(args, results, text)
    return all(r["ok"] for r in results.values())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="write a JSON result here")
    common.add_argument("--checkpoint-dir", type=Path, help="resume trace searches from this directory")
    common.add_argument("--workers", type=int, default=1, help="worker processes for searches")
    common.add_argument("--ledger", type=Path, help="alternative ledger JSON")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="genus4", description="Point-count bounds for genus-4 curves over small fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-table", parents=[common], help="recount every witness curve")
    p.set_defaults(func=cmd_verify_table)

    p = sub.add_parser("run-case", parents=[common], help="eliminate one (q, N) row")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", choices=BUDGETS, default="desk")
    p.set_defaults(func=cmd_run_case)

    p = sub.add_parser("run-all", parents=[common], help="run every row and print the bounds table")
    p.add_argument("--budget", choices=BUDGETS, default="desk")
    p.set_defaults(func=cmd_run_all)

    p = sub.add_parser("report", parents=[common], help="bounds table from witnesses alone")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("search-trace", parents=[common], help="double covers of curves with trace t")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--floor", type=int, default=0)
    p.set_defaults(func=cmd_search_trace)

    p = sub.add_parser("search-hyper", parents=[common], help="hyperelliptic curves with an order-4 automorphism")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_search_hyper)

    p = sub.add_parser("search-kummer", parents=[common], help="cyclic covers z^m = f")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True, choices=(3, 5))
    p.add_argument("--t", type=int, help="trace of the base elliptic curves (m = 3)")
    p.set_defaults(func=cmd_search_kummer)

    p = sub.add_parser("hermitian", parents=[common], help="conductor-2 pushforward analysis")
    p.add_argument("--case", required=True, choices=("delta12", "delta16", "delta28"))
    p.set_defaults(func=cmd_hermitian)

    p = sub.add_parser("zeta5", parents=[common], help="Z[zeta_5] checks")
    p.add_argument("action", choices=("reduce", "covering", "cm"))
    p.add_argument("--denominators", type=int, nargs="+", default=[2, 3, 4, 5])
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=5)
    p.set_defaults(func=cmd_zeta5)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        ok = args.func(args)
    except (ValueError, KeyError, LookupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
