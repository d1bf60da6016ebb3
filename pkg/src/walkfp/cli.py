"""Command-line front end.

Subcommands: compare, family, widgets, bounds, binsweep.

Exit codes for `compare`: 0 = not distinguished, 1 = distinguished,
2 = invalid flags (argparse), 3 = unreadable input, 4 = mismatched vertex
counts, 5 = resource budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import bounds as bounds_mod
from .fingerprint import (
    DEFAULT_BIN_WIDTH,
    DEFAULT_THRESHOLD,
    FingerprintCache,
    bin_sweep,
    compare,
    delta,
    _build_cached,
)
from .graphs import Graph, Graph6Error, decode_graph6, detect_srg, read_graph6_file
from .srg import propagator_coefficients
from .walk import WalkSpec, basis_dimension
from .widgets import PRESETS, Widget, count_widget, widget_preset, widget_value

EXIT_NOT_DISTINGUISHED = 0
EXIT_DISTINGUISHED = 1
EXIT_USAGE = 2  # argparse's own code for invalid flags
EXIT_BAD_INPUT = 3
EXIT_MISMATCH = 4
EXIT_BUDGET = 5

DEFAULT_ELEMENT_BUDGET = 10_000_000_000
SCHEMA_VERSION = 1


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_BAD_INPUT):
        super().__init__(message)
        self.code = code


def _load_graphs(source: str) -> list[Graph]:
    """A path to a graph6 file, or an inline graph6 record."""
    if os.path.exists(source):
        try:
            graphs = read_graph6_file(source)
        except (OSError, Graph6Error, UnicodeDecodeError) as exc:
            raise CliError(f"cannot read {source}: {exc}")
        if not graphs:
            raise CliError(f"no graph6 records in {source}")
        return graphs
    try:
        return [decode_graph6(source)]
    except Graph6Error as exc:
        raise CliError(f"not a file and not a valid graph6 record: {exc}")


def _load_one(source: str) -> Graph:
    graphs = _load_graphs(source)
    if len(graphs) > 1:
        raise CliError(f"{source} contains {len(graphs)} graphs; expected one")
    return graphs[0]


def _walk_spec(args, statistics=None) -> WalkSpec:
    return WalkSpec(args.particles, statistics or args.stats, args.time)


def _check_budget(n: int, spec: WalkSpec, budget: int) -> None:
    dim = basis_dimension(n, spec)
    elements = dim * dim
    if elements > budget:
        raise CliError(
            f"walk streams {elements:.3e} elements (basis dimension {dim}), "
            f"over the budget of {budget:.0e}; raise --element-budget to force",
            EXIT_BUDGET,
        )


def _cache_from_args(args) -> FingerprintCache | None:
    directory = getattr(args, "cache_dir", None) or os.environ.get("WALKFP_CACHE_DIR")
    if getattr(args, "resume", False) and not directory:
        raise CliError("--resume requires --cache-dir or WALKFP_CACHE_DIR")
    if directory and (getattr(args, "resume", False) or args.command == "compare"):
        return FingerprintCache(directory)
    return None


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# compare
# ---------------------------------------------------------------------------

def cmd_compare(args) -> int:
    ga = _load_one(args.graph_a)
    gb = _load_one(args.graph_b)
    if ga.n != gb.n:
        raise CliError(
            f"vertex counts differ ({ga.n} vs {gb.n}); graphs are trivially "
            "non-isomorphic and outside the walk's scope",
            EXIT_MISMATCH,
        )
    spec = _walk_spec(args)
    _check_budget(ga.n, spec, args.element_budget)
    report = compare(
        ga, gb, spec,
        bin_width=args.bin_width, threshold=args.threshold,
        workers=args.jobs, cache=_cache_from_args(args),
    )
    if report.threshold < report.delta <= 100 * report.threshold:
        print(
            f"warning: delta {report.delta:.3e} is within two decades of the "
            f"noise floor {report.threshold:.0e}",
            file=sys.stderr,
        )
    payload = {"schema_version": SCHEMA_VERSION, **report.as_dict()}
    _emit(payload, args.out)
    return EXIT_DISTINGUISHED if report.distinguished else EXIT_NOT_DISTINGUISHED


# ---------------------------------------------------------------------------
# family
# ---------------------------------------------------------------------------

def cmd_family(args) -> int:
    graphs = _load_graphs(args.family_file)
    ns = {g.n for g in graphs}
    if len(ns) > 1:
        raise CliError(f"family file mixes vertex counts {sorted(ns)}")
    n = ns.pop()
    statistics = ["boson", "fermion"] if args.stats == "both" else [args.stats]
    for st in statistics:
        _check_budget(n, _walk_spec(args, st), args.element_budget)
    cache = _cache_from_args(args)
    params = detect_srg(graphs[0])

    start = time.perf_counter()
    fps = {}

    def build(item):
        i, st = item
        spec = _walk_spec(args, st)
        return (i, st), _build_cached(graphs[i], spec, args.bin_width, 1, cache)

    work = [(i, st) for st in statistics for i in range(len(graphs))]
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            for key, fp in pool.map(build, work):
                fps[key] = fp
    else:
        for key, fp in map(build, work):
            fps[key] = fp

    pair_records = []
    failures = {st: 0 for st in statistics}
    npairs = 0
    for i in range(len(graphs)):
        for j in range(i + 1, len(graphs)):
            npairs += 1
            for st in statistics:
                d = delta(fps[(i, st)], fps[(j, st)])
                distinguished = d > args.threshold
                if not distinguished:
                    failures[st] += 1
                pair_records.append(
                    {"a": i, "b": j, "statistics": st, "delta": d,
                     "distinguished": distinguished}
                )
    elapsed = time.perf_counter() - start

    summary = {
        "schema_version": SCHEMA_VERSION,
        "family": list(params.as_tuple()) if params else None,
        "n": n,
        "graphs": len(graphs),
        "comparisons": npairs,
        "p": args.particles,
        "t": args.time,
        "bin_width": args.bin_width,
        "threshold": args.threshold,
        "failures": {f"{st}_failures": failures[st] for st in statistics},
        "pairs": pair_records,
        "elapsed": elapsed,
    }
    assert npairs == len(graphs) * (len(graphs) - 1) // 2
    _emit(summary, args.out)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["family", "graphs", "comparisons"]
                + [f"{st}_failures" for st in statistics]
            )
            writer.writerow(
                [str(params) if params else "?", len(graphs), npairs]
                + [failures[st] for st in statistics]
            )
    return 0


# ---------------------------------------------------------------------------
# widgets / bounds / binsweep
# ---------------------------------------------------------------------------

def cmd_widgets(args) -> int:
    if args.widget in PRESETS:
        w = widget_preset(args.widget)
    else:
        w = Widget.from_text(args.widget)
    graphs = _load_graphs(args.family_file)
    records = []
    for i, g in enumerate(graphs):
        wc = count_widget(g, w)
        rec = {"graph": i, "count": wc.multiplicity}
        params = detect_srg(g)
        if params is not None:
            coeffs = propagator_coefficients(params, args.time)
            val = widget_value(w, coeffs, args.stats)
            rec["value"] = [val.real, val.imag]
        records.append(rec)
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "widget": w.to_text(),
            "statistics": args.stats,
            "t": args.time,
            "counts": records,
        },
        args.out,
    )
    return 0


def cmd_bounds(args) -> int:
    report = bounds_mod.ratio_lower_bound_log(args.particles, args.N, args.x_p)
    payload = {"schema_version": SCHEMA_VERSION, **report.as_dict()}
    _emit(payload, args.out)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["N", "log_R_lower"])
            m = 2
            while m * m <= args.N:
                r = bounds_mod.ratio_lower_bound_log(args.particles, m * m, args.x_p)
                writer.writerow([m * m, r.log_r_lower])
                m += 1
    return 0


def cmd_binsweep(args) -> int:
    g = _load_one(args.graph)
    spec = _walk_spec(args)
    _check_budget(g.n, spec, args.element_budget)
    lo, hi = math.log10(args.min_width), math.log10(args.max_width)
    widths = [10 ** (lo + i * (hi - lo) / (args.points - 1)) for i in range(args.points)]
    table = bin_sweep(g, spec, widths)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "p": args.particles,
        "statistics": args.stats,
        "t": args.time,
        "sweep": [{"width": w, "bins": b} for w, b in table],
    }
    _emit(payload, args.out)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["width", "bins"])
            writer.writerows(table)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_walk_flags(sub, stats_choices=("boson", "fermion")):
    sub.add_argument("-p", "--particles", type=int, default=3)
    sub.add_argument("--stats", choices=stats_choices, default=stats_choices[0])
    sub.add_argument("-t", "--time", type=float, default=1.0)
    sub.add_argument("--bin-width", type=float, default=DEFAULT_BIN_WIDTH)
    sub.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    sub.add_argument("--element-budget", type=int, default=DEFAULT_ELEMENT_BUDGET)
    sub.add_argument("-j", "--jobs", type=int, default=1)
    sub.add_argument("--out", help="write the JSON report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walkfp",
        description="Compare graphs by multi-particle quantum-walk fingerprints.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    c = subs.add_parser("compare", help="compare two graphs under one walk")
    c.add_argument("graph_a", help="graph6 file or inline record")
    c.add_argument("graph_b", help="graph6 file or inline record")
    _add_walk_flags(c)
    c.add_argument("--cache-dir", help="fingerprint cache directory")
    c.set_defaults(func=cmd_compare)

    f = subs.add_parser("family", help="all-pairs comparison of a family file")
    f.add_argument("family_file", help="graph6 file, one family member per line")
    _add_walk_flags(f, stats_choices=("both", "boson", "fermion"))
    f.add_argument("--csv", help="write a one-row summary CSV here")
    f.add_argument("--cache-dir", help="fingerprint cache directory")
    f.add_argument("--resume", action="store_true",
                   help="reuse cached fingerprints from the cache directory")
    f.set_defaults(func=cmd_family)

    w = subs.add_parser("widgets", help="count a widget on every graph of a file")
    w.add_argument("family_file")
    w.add_argument("--widget", default="empty3",
                   help=f"preset ({', '.join(PRESETS)}) or E/S/N rows like ENE/NEN/ENE")
    w.add_argument("--stats", choices=("boson", "fermion"), default="boson")
    w.add_argument("-t", "--time", type=float, default=1.0)
    w.add_argument("--out")
    w.set_defaults(func=cmd_widgets)

    b = subs.add_parser("bounds", help="counting-bound report for the walk")
    b.add_argument("-p", "--particles", type=int, required=True)
    b.add_argument("-N", type=int, required=True, help="vertex count (perfect square)")
    b.add_argument("--x-p", type=int, default=None,
                   help="explicit widget-value count; defaults to the Burnside lower bound")
    b.add_argument("--csv", help="write (N, log_R_lower) for all squares up to N")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bounds)

    s = subs.add_parser("binsweep", help="distinct-bin counts across bin widths")
    s.add_argument("graph", help="graph6 file or inline record")
    _add_walk_flags(s)
    s.add_argument("--min-width", type=float, default=1e-8)
    s.add_argument("--max-width", type=float, default=1e-2)
    s.add_argument("--points", type=int, default=13)
    s.add_argument("--csv")
    s.set_defaults(func=cmd_binsweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
