"""Command-line front end.

Usage examples::

    fastcollatz stoptime 20480
    fastcollatz iters "2^100-1" --format json
    fastcollatz encode 7
    fastcollatz tree --root 1 --max 64 --format csv
    fastcollatz stats --limit 10000 --doubling 10
    fastcollatz fit 10000:56.90 5120000:98.93
    fastcollatz compare --exponents 100,500,1000
    fastcollatz verify --lo 1 --hi 1000000
    fastcollatz verify --window 100000 --offsets 100000 --checkpoint scan.json
    fastcollatz bench --suite primes --count 100 --seed 1
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import asdict

from . import analysis, bench, codeword, core, tree, verify
from .errors import BudgetExceeded, CollatzError
from .expr import parse_input

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

REPORT_FIELDS = (
    "input",
    "stopping_time",
    "loop_iterations",
    "odd_steps",
    "division_steps",
    "odd_count",
    "sub_branches",
)


def _emit(rows, fields, fmt, out, text=None):
    """Write rows as CSV, JSON (array of objects) or plain text."""
    if fmt == "json":
        json.dump(rows if len(rows) != 1 or text is None else rows[0], out)
        out.write("\n")
    elif fmt == "csv":
        writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        writer.writerows(rows)
    else:
        out.write(text if text is not None else _plain(rows, fields))


def _plain(rows, fields):
    widths = {f: max(len(f), *(len(str(r[f])) for r in rows)) for f in fields}
    lines = ["  ".join(f.rjust(widths[f]) for f in fields)]
    lines += ["  ".join(str(r[f]).rjust(widths[f]) for f in fields) for r in rows]
    return "\n".join(lines) + "\n"


def _pct(x):
    return f"{x:.2f}"


def _int_list(text):
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _point(text):
    try:
        n, f = text.split(":")
        return float(n), float(f)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N:F, got {text!r}")


def _expr(text):
    try:
        return parse_input(text)
    except CollatzError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def cmd_stoptime(args, out):
    reports = [core.stop_time_fast(n, args.budget) for n in args.inputs]
    rows = [{"input": r.input, "stopping_time": r.stopping_time} for r in reports]
    text = "".join(f"{r.stopping_time}\n" for r in reports)
    _emit(rows, ("input", "stopping_time"), args.format, out, text)


def cmd_iters(args, out):
    algo = {"fast": core.stop_time_fast, "bitwise": core.stop_time_bitwise}[args.algorithm]
    rows = [asdict(algo(n, args.budget)) for n in args.inputs]
    _emit(rows, REPORT_FIELDS, args.format, out)


def cmd_encode(args, out):
    rows = []
    text = []
    for n in args.inputs:
        word = codeword.encode(n, args.budget)
        rows.append(
            {
                "input": n,
                "code_word": str(word),
                "odd_groups": word.odd_groups,
                "extra_divisions": word.extra_divisions,
                "length": len(word),
            }
        )
        text.append(f"{word}\nU={word.odd_groups} D-U={word.extra_divisions} length={len(word)}\n")
    fields = ("input", "code_word", "odd_groups", "extra_divisions", "length")
    _emit(rows, fields, args.format, out, "".join(text))


def cmd_tree(args, out):
    t = tree.generate(args.root, args.max)
    if args.format == "csv":
        out.write(tree.to_csv(t))
    elif args.format == "json":
        json.dump(tree.rows(t), out)
        out.write("\n")
    else:
        out.write(tree.to_dot(t))


def cmd_stats(args, out):
    stats = analysis.doubling_schedule(args.limit, args.doubling, workers=args.workers, budget=args.budget)
    rows = [
        {"input_count": s.input_count, "best": s.best, "average": round(s.average, 4), "worst": s.worst}
        for s in stats
    ]
    _emit(rows, ("input_count", "best", "average", "worst"), args.format, out)


def cmd_fit(args, out):
    fit = analysis.fit_two_point(args.p1, args.p2)
    row = {"a": fit.a, "b": fit.b}
    _emit([row], ("a", "b"), args.format, out, f"f(n) = {fit.a:.2f} * log2(n) {fit.b:+.2f}\n")


def cmd_compare(args, out):
    rows = []
    for row in analysis.comparison_table(args.exponents, run_baseline=not args.skip_baseline, budget=args.budget):
        d = row.as_dict()
        if args.format != "json":
            d["impr_ren"] = _pct(d["impr_ren"])
            d["impr_bitwise"] = _pct(d["impr_bitwise"])
        rows.append(d)
    _emit(rows, analysis.COMPARISON_FIELDS, args.format, out)


def cmd_verify(args, out):
    if args.window is not None:
        report = verify.verify_window(
            args.window,
            args.offsets,
            args.budget,
            cross_check_every=args.cross_check_every,
            chunk_size=args.chunk_size,
            workers=args.workers,
            checkpoint=args.checkpoint,
        )
    else:
        if args.lo is None or args.hi is None:
            raise CollatzError("verify needs --lo and --hi, or --window")
        report = verify.verify_range(
            args.lo,
            args.hi,
            args.chunk_size,
            args.budget,
            workers=args.workers,
            checkpoint=args.checkpoint,
            cross_check_every=1 if args.cross_check_every is None else args.cross_check_every,
        )
    data = report.to_json_dict()
    if args.format == "json":
        json.dump(data, out)
        out.write("\n")
    elif args.format == "csv":
        fields = ("range_lo", "range_hi", "checked", "mismatch_count", "incident_count",
                  "max_stopping_time", "argmax_input", "elapsed", "ok")
        row = {**data, "mismatch_count": len(report.mismatches), "incident_count": len(report.incidents)}
        _emit([row], fields, "csv", out)
    else:
        lo, hi = report.range_lo, report.range_hi
        label = f"[{lo}, {hi}]" if hi.bit_length() <= 64 else f"{len(report.incidents) + report.checked} inputs above 2^{lo.bit_length() - 1}"
        out.write(
            f"checked {report.checked} of {label} in {report.elapsed:.2f}s\n"
            f"mismatches: {len(report.mismatches)}  budget incidents: {len(report.incidents)}\n"
            f"max stopping time {report.max_stopping_time} at {report.argmax_input if report.argmax_input.bit_length() <= 64 else 'n=' + hex(report.argmax_input)[:20] + '...'}\n"
        )
        for n, f, b in report.mismatches:
            out.write(f"MISMATCH n={n}: fast={f} baseline={b}\n")
    return 0 if report.ok else 1


def cmd_bench(args, out):
    records = bench.run_bench(args.suite, args.count, args.seed, args.repetitions)
    if args.format == "text":
        summary = bench.summarize(records)
        out.write(
            f"{args.suite}: {args.count} inputs, median per-call time\n"
            + "".join(f"  {name:9s} {t * 1e6:12.3f} us\n" for name, t in summary.items())
        )
    else:
        _emit([r.as_dict() for r in records], bench.BENCH_FIELDS, args.format, out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fastcollatz", description="Collatz stopping times and verification.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("stoptime", help="stopping time (sequence terms, both ends counted)")
    p.add_argument("inputs", nargs="+", type=_expr, metavar="N")
    p.set_defaults(func=cmd_stoptime)

    p = sub.add_parser("iters", help="full counter report")
    p.add_argument("inputs", nargs="+", type=_expr, metavar="N")
    p.add_argument("--algorithm", choices=("fast", "bitwise"), default="fast")
    p.set_defaults(func=cmd_iters)

    p = sub.add_parser("encode", help="code-word encoding")
    p.add_argument("inputs", nargs="+", type=_expr, metavar="N")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("tree", help="inverse tree; text format is DOT")
    p.add_argument("--root", type=_expr, default=1)
    p.add_argument("--max", type=_expr, required=True)
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("stats", help="best/average/worst iterations over [2, N]")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--doubling", type=int, default=1, help="number of doubled limits (default: 1)")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("fit", help="two-point fit of f(n) = a*log2(n) + b")
    p.add_argument("p1", type=_point, metavar="N:F")
    p.add_argument("p2", type=_point, metavar="N:F")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("compare", help="iteration comparison for 2^e - 1")
    p.add_argument("--exponents", type=_int_list, default=[100, 500, 1000, 5000, 10000])
    p.add_argument("--skip-baseline", action="store_true",
                   help="take the bitwise count from the step count instead of running it")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", help="fast vs bitwise over a range or window")
    p.add_argument("--lo", type=_expr)
    p.add_argument("--hi", type=_expr)
    p.add_argument("--window", type=int, metavar="E", help="scan [2^E, 2^E + OFFSETS]")
    p.add_argument("--offsets", type=int, default=100)
    p.add_argument("--chunk-size", type=int, default=4096)
    p.add_argument("--checkpoint", metavar="PATH")
    p.add_argument("--cross-check-every", type=int, metavar="K",
                   help="run the baseline on every K-th input; 0 disables")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time proposed vs bitwise")
    p.add_argument("--suite", choices=bench.SUITES, required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repetitions", type=int, default=5)
    p.set_defaults(func=cmd_bench)

    for name, p in sub.choices.items():
        p.add_argument("--format", choices=("text", "csv", "json"),
                       default="csv" if name == "compare" else "text")
        p.add_argument("--budget", type=int, default=core.DEFAULT_BUDGET,
                       help="per-input loop-iteration budget (default: %(default)s)")
        if name in ("stats", "verify"):
            p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        status = args.func(args, out)
    except (CollatzError, BudgetExceeded, verify.CheckpointError, ValueError) as exc:
        print(f"fastcollatz: error: {exc}", file=sys.stderr)
        return 2
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
