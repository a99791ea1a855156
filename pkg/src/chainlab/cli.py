"""Command-line front end.

Subcommands: stats, sample, decompress, compress, series, brauer,
compressible, verify.  Exit codes: 0 success, 1 validation error,
2 verification failure, 3 node budget exceeded.  All emitted files are
deterministic: exact integers as decimal strings, rationals as "p/q",
no wall-clock anywhere.
"""

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

import mpmath

from . import addition_chains as ac
from . import chains as ch
from . import decompress as dc
from . import series as sr
from . import stats as st
from . import verify as vf

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_BUDGET = 3

EXACT_MEAN_LIMIT = 500  # beyond this, report the mean as a high-precision decimal


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; this CLI reserves 2 for
    # verification failures, so route usage problems to status 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _emit(rows, header, fmt, out):
    """Write rows either as CSV (with header) or as a JSON array of objects."""
    if fmt == "json":
        text = json.dumps([dict(zip(header, row)) for row in rows], indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        text = buf.getvalue()
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _quantile(sorted_values, q):
    # linear interpolation between order statistics; deterministic
    if len(sorted_values) == 1:
        return sorted_values[0]
    position = (len(sorted_values) - 1) * q
    low = math.floor(position)
    high = math.ceil(position)
    if low == high:
        return sorted_values[low]
    weight = position - low
    return sorted_values[low] * (1 - weight) + sorted_values[high] * weight


def _cmd_stats(args):
    n_low = args.n if args.n is not None else 1
    n_high = args.n_max if args.n_max is not None else (args.n if args.n is not None else 6)
    if args.n is not None and args.n_max is None:
        n_low = n_high = args.n
    header = ["n", "chains", "total_nodes", "expected_size"]
    levels = args.level_max or 0
    header += [f"level_{l}" for l in range(1, levels + 1)]
    rows = []
    for n in range(n_low, n_high + 1):
        row = [n, str(st.chain_count(n, args.k)), str(st.total_decompressed_nodes(n, args.k)),
               _rational(st.expected_size_exact(n, args.k))]
        row += [str(st.level_count_total(l, n, args.k)) for l in range(1, levels + 1)]
        rows.append(row)
    _emit(rows, header, args.format, args.out)
    return EXIT_OK


def _cmd_sample(args):
    rng_seeds = __import__("random").Random(args.seed)
    sizes = []
    for _ in range(args.count):
        chain = ch.random_chain(args.k, args.n, rng_seeds.getrandbits(64))
        sizes.append(dc.decompressed_size(chain))
    sizes.sort()
    logs = [math.log2(s) if s > 0 else 0.0 for s in sizes]
    empirical_mean = Fraction(sum(sizes), len(sizes))
    if args.n <= EXACT_MEAN_LIMIT:
        exact_mean = _rational(st.expected_size_exact(args.n, args.k))
    else:
        exact_mean = mpmath.nstr(st.expected_size_value(args.n, args.k, args.precision), 12)
    report = [
        ("k", args.k),
        ("n", args.n),
        ("count", args.count),
        ("seed", args.seed),
        ("size_log2_min", f"{logs[0]:.6f}"),
        ("size_log2_q1", f"{_quantile(logs, 0.25):.6f}"),
        ("size_log2_median", f"{_quantile(logs, 0.5):.6f}"),
        ("size_log2_q3", f"{_quantile(logs, 0.75):.6f}"),
        ("size_log2_max", f"{logs[-1]:.6f}"),
        ("empirical_mean_size", _rational(empirical_mean)),
        ("exact_mean_size", exact_mean),
        ("asymptotic_mean_size",
         mpmath.nstr(st.expected_size_asymptotic(args.n, args.k, args.precision), 12)
         if args.n >= 1 else "0"),
        ("note", "the size distribution has a heavy upper tail: the empirical mean "
                 "usually sits far below the exact mean"),
    ]
    _emit([list(r) for r in report], ["key", "value"], args.format, args.out)
    return EXIT_OK


def _read_input(path):
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _cmd_decompress(args):
    text = _read_input(args.input)
    probe = json.loads(text)
    if isinstance(probe, dict) and "targets" in probe:
        dag = dc.chain_to_dag(ch.chain_from_json(text))
    else:
        dag = dc.dag_from_json(text)
    tree = dc.decompress_tree(dag, args.budget)
    payload = dc.tree_to_json(tree) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(payload)
    else:
        sys.stdout.write(payload)
    return EXIT_OK


def _cmd_compress(args):
    tree = dc.tree_from_json(_read_input(args.input), args.k)
    dag = dc.compress_tree(tree, args.k)
    payload = dc.dag_to_json(dag) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(payload)
    else:
        sys.stdout.write(payload)
    return EXIT_OK


def _cmd_series(args):
    levels = args.level_max
    header = ["n"] + [f"level_{l}" for l in range(1, levels + 1)] + ["total"]
    per_level = [sr.level_series(l, args.k, args.order) for l in range(1, levels + 1)]
    rows = []
    for n in range(args.order + 1):
        row = [n]
        for series in per_level:
            row.append(_rational(series.coeffs[n]))
        # the all-levels coefficient, i.e. the expected decompressed size
        row.append(_rational(st.expected_size_exact(n, args.k)))
        rows.append(row)
    _emit(rows, header, args.format, args.out)
    return EXIT_OK


def _cmd_brauer(args):
    if args.star:
        value = ac.min_star_chain_length(args.m)
        rows = [["l_star", value]]
    else:
        value = ac.min_addition_chain_length(args.m)
        rows = [["l", value]]
    _emit(rows, ["metric", "value"], args.format, args.out)
    return EXIT_OK


def _cmd_compressible(args):
    counts = ac.count_chain_compressible(args.max_m)
    rows = [[m, count] for m, count in enumerate(counts, start=1)]
    _emit(rows, ["m", "count"], args.format, args.out)
    return EXIT_OK


def _cmd_verify(args):
    records = vf.run_suite(args.suite, max_n_binary=args.max_n)
    for record in records:
        status = "ok" if record["ok"] else "FAIL"
        print(f"{status:4s} {record['id']} {record['name']}: {record['details']}")
    if args.out or args.format == "json":
        rows = [[r["id"], r["name"], "ok" if r["ok"] else "FAIL", r["details"]]
                for r in records]
        if args.format == "json":
            payload = json.dumps({"suite": args.suite,
                                  "ok": all(r["ok"] for r in records),
                                  "results": records}, indent=2) + "\n"
            if args.out:
                with open(args.out, "w", encoding="utf-8") as handle:
                    handle.write(payload)
            else:
                sys.stdout.write(payload)
        else:
            _emit(rows, ["id", "name", "status", "details"], "csv", args.out)
    return EXIT_OK if all(r["ok"] for r in records) else EXIT_VERIFY


def build_parser():
    parser = _Parser(prog="chainlab",
                     description="Exact tools for k-ary chains and their decompressed trees.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", metavar="PATH", help="write output to a file instead of stdout")

    p = sub.add_parser("stats", help="exact per-size statistics table")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--n", type=int)
    p.add_argument("--n-max", type=int, dest="n_max")
    p.add_argument("--level-max", type=int, dest="level_max")
    common(p)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("sample", help="sample uniform chains and report size statistics")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--precision", type=int, default=st.DEFAULT_PRECISION)
    common(p)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("decompress", help="materialize the decompressed tree of a chain or DAG")
    p.add_argument("--input", required=True, metavar="PATH", help="chain or DAG JSON file")
    p.add_argument("--budget", type=int, default=dc.DEFAULT_NODE_BUDGET)
    common(p)
    p.set_defaults(func=_cmd_decompress)

    p = sub.add_parser("compress", help="hash-cons a tree into its minimal DAG")
    p.add_argument("--input", required=True, metavar="PATH", help="tree JSON file")
    p.add_argument("--k", type=int, help="arity, required only for a bare-leaf tree")
    common(p)
    p.set_defaults(func=_cmd_compress)

    p = sub.add_parser("series", help="coefficient table of the per-level series")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--order", type=int, default=30)
    p.add_argument("--level-max", type=int, dest="level_max", default=6)
    common(p)
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("brauer", help="minimal addition / star chain length")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--star", action="store_true", help="restrict to Brauer (star) chains")
    common(p)
    p.set_defaults(func=_cmd_brauer)

    p = sub.add_parser("compressible", help="counts of chain-compressible binary trees")
    p.add_argument("--max-m", type=int, dest="max_m", default=11)
    common(p)
    p.set_defaults(func=_cmd_compressible)

    p = sub.add_parser("verify", help="run the oracle battery")
    p.add_argument("--suite", default="all",
                   help='"all" or comma-separated check ids (c01..c14)')
    p.add_argument("--max-n", type=int, dest="max_n", default=6,
                   help="bound for the exhaustive binary scans (ternary uses max-n - 2)")
    common(p)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except dc.BudgetExceededError as exc:
        print(f"chainlab: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ch.ChainError, dc.DagError, ac.AdditionChainError, ValueError, OSError,
            json.JSONDecodeError) as exc:
        print(f"chainlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
