"""Command-line front end.

Subcommands map one-to-one onto the solver and steering operations;
results go to stdout as a human-readable summary and optionally to a
file as CSV or JSON. Exit codes: 0 success, 1 input error, 2 infeasible
configuration.
"""

import argparse
import csv
import json
import sys

import numpy as np

from .measurements import SUPPORTED_SETTINGS
from .reference import PUBLISHED_TABLE
from .solver import (
    InfeasibleError,
    check_3x2_overlap,
    max_alices,
    min_purity,
    min_sharpness_for_violation,
    region_scan_2x2,
    sharpness_ranges,
    DEFAULT_2D_STEP,
    DEFAULT_3D_STEP,
)
from .steering import (
    CLASSICAL_BOUNDS,
    Scenario,
    classical_bound,
    evaluate,
    steering_parameter_closed,
    steering_parameter_oracle,
)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_INFEASIBLE = 2


def _fmt(value):
    return f"{value:.6f}"


def _parse_sharpness_list(text):
    try:
        values = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise ValueError(f"bad sharpness list {text!r}") from exc
    if not values:
        raise ValueError("empty sharpness list")
    return values


def _write_output(path, fmt, json_payload, csv_rows, csv_header):
    if path is None:
        return
    if fmt == "json":
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(json_payload, handle, indent=2, sort_keys=True)
            handle.write("\n")
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(csv_header)
            writer.writerows(csv_rows)


def _cmd_bounds(args):
    rows = [(n, _fmt(classical_bound(n))) for n in sorted(CLASSICAL_BOUNDS)]
    for n, value in rows:
        print(f"n={n}  bound={value}")
    _write_output(
        args.output,
        args.format,
        {str(n): classical_bound(n) for n in sorted(CLASSICAL_BOUNDS)},
        rows,
        ["n_settings", "bound"],
    )
    return EXIT_OK


def _cmd_eval(args):
    scenario = Scenario(args.mu, args.n, args.alice, args.bob)
    report = evaluate(scenario, verify=args.verify)
    print(
        f"n={args.n}  mu={_fmt(args.mu)}  bound={_fmt(report.bound)}  "
        f"violations={int(report.violated.sum())}/{report.values.size}"
    )
    for i in range(scenario.n_alices):
        for p in range(scenario.n_bobs):
            mark = "violates" if report.violated[i, p] else "no violation"
            print(f"  A{i + 1}/B{p + 1}: S={_fmt(report.values[i, p])}  {mark}")
    if args.verify:
        print(f"  oracle max deviation: {report.oracle_deviation:.3e}")
    if args.output is not None:
        if args.format == "json":
            with open(args.output, "w", encoding="utf-8") as handle:
                handle.write(report.to_json())
                handle.write("\n")
        else:
            with open(args.output, "w", encoding="utf-8", newline="") as handle:
                handle.write(report.to_csv())
    return EXIT_OK


def _cmd_ranges(args):
    intervals = sharpness_ranges(args.n, args.alices, args.mu)
    print(f"n={args.n}  alices={args.alices}  mu={_fmt(args.mu)}")
    rows = []
    payload = {}
    for interval in intervals:
        print(f"  {interval.observer}: [{_fmt(interval.lo)}, {_fmt(interval.hi)}]")
        rows.append((interval.observer, _fmt(interval.lo), _fmt(interval.hi)))
        payload[interval.observer] = [interval.lo, interval.hi]
    _write_output(args.output, args.format, payload, rows, ["observer", "lo", "hi"])
    return EXIT_OK


def _cmd_maxalices(args):
    if args.all:
        table = {n: max_alices(n, args.mu) for n in sorted(SUPPORTED_SETTINGS)}
        for n, count in table.items():
            print(f"n={n}  max_alices={count}")
        _write_output(
            args.output,
            args.format,
            {str(n): count for n, count in table.items()},
            [(n, count) for n, count in table.items()],
            ["n_settings", "max_alices"],
        )
        return EXIT_OK
    count = max_alices(args.n, args.mu)
    print(f"n={args.n}  mu={_fmt(args.mu)}  max_alices={count}")
    _write_output(
        args.output,
        args.format,
        {str(args.n): count},
        [(args.n, count)],
        ["n_settings", "max_alices"],
    )
    return EXIT_OK


def _cmd_minpurity(args):
    value = min_purity(args.n, args.alices, args.bobs)
    print(
        f"n={args.n}  alices={args.alices}  bobs={args.bobs}  "
        f"min_purity={_fmt(value)}"
    )
    _write_output(
        args.output,
        args.format,
        {"n_settings": args.n, "n_alices": args.alices, "n_bobs": args.bobs,
         "min_purity": value},
        [(args.n, args.alices, args.bobs, _fmt(value))],
        ["n_settings", "n_alices", "n_bobs", "min_purity"],
    )
    return EXIT_OK


def _cmd_region2x2(args):
    scan = region_scan_2x2(args.n, args.mu, args.grid_step)
    extent = scan.coordinate_extent()
    if extent is None:
        print(f"n={args.n}  mu={_fmt(args.mu)}  region empty")
    else:
        print(
            f"n={args.n}  mu={_fmt(args.mu)}  cells={int(scan.in_region.sum())}  "
            f"lam1 extent=[{_fmt(extent[0])}, {_fmt(extent[1])}]  "
            f"area={scan.area:.6f}"
        )
    rows = [
        tuple(_fmt(v) for v in row[:6]) + (row[6],) for row in scan.to_csv_rows()
    ]
    payload = {
        "n_settings": args.n,
        "mu": args.mu,
        "grid_step": args.grid_step,
        "cells": [[float(a), float(b)] for a, b in scan.cells],
        "extent": list(extent) if extent else None,
        "area": scan.area,
    }
    _write_output(
        args.output,
        args.format,
        payload,
        rows,
        ["lam1", "eta1", "S11", "S12", "S21", "S22", "in_region"],
    )
    return EXIT_OK


def _cmd_check3x2(args):
    overlap = check_3x2_overlap(args.n, args.mu, args.grid_step, n_bobs=args.bobs)
    print(
        f"n={args.n}  mu={_fmt(args.mu)}  bobs={args.bobs}  "
        f"overlap={'yes' if overlap else 'no'}"
    )
    _write_output(
        args.output,
        args.format,
        {"n_settings": args.n, "mu": args.mu, "n_bobs": args.bobs,
         "overlap": overlap},
        [(args.n, _fmt(args.mu), args.bobs, int(overlap))],
        ["n_settings", "mu", "n_bobs", "overlap"],
    )
    return EXIT_OK


def _cmd_verify(args):
    rng = np.random.default_rng(args.seed)
    settings_choices = sorted(SUPPORTED_SETTINGS)
    deviation = 0.0
    for _ in range(args.count):
        n = int(rng.choice(settings_choices))
        n_a = int(rng.integers(1, 4))
        n_b = int(rng.integers(1, 4))
        scenario = Scenario(
            float(rng.uniform(0.0, 1.0)),
            n,
            tuple(rng.uniform(0.0, 1.0, n_a)),
            tuple(rng.uniform(0.0, 1.0, n_b)),
        )
        i = int(rng.integers(1, n_a + 1))
        p = int(rng.integers(1, n_b + 1))
        closed = steering_parameter_closed(scenario, i, p)
        oracle = steering_parameter_oracle(scenario, i, p)
        deviation = max(deviation, abs(closed - oracle))
    print(f"scenarios={args.count}  max deviation={deviation:.3e}")
    _write_output(
        args.output,
        args.format,
        {"scenarios": args.count, "max_deviation": deviation},
        [(args.count, f"{deviation:.3e}")],
        ["scenarios", "max_deviation"],
    )
    return EXIT_OK


def reproduce_table1(output_path):
    """Recompute every reference-table row and emit a CSV holding the
    computed numbers, the published numbers and absolute deviations."""
    header = [
        "n_settings", "n_alices", "observer",
        "lo", "hi", "published_lo", "published_hi",
        "deviation_lo", "deviation_hi",
    ]
    rows = []
    max_dev = 0.0
    for (n, n_alices), published in sorted(PUBLISHED_TABLE.items()):
        intervals = sharpness_ranges(n, n_alices, 1.0)
        ranged = {}
        for interval in intervals:
            ranged[interval.observer] = interval
        for j, (pub_lo, pub_hi) in enumerate(published["alice"], start=1):
            interval = ranged[f"A{j}"]
            dev_lo = abs(interval.lo - pub_lo)
            dev_hi = abs(interval.hi - pub_hi)
            max_dev = max(max_dev, dev_lo, dev_hi)
            rows.append(
                (n, n_alices, f"A{j}", _fmt(interval.lo), _fmt(interval.hi),
                 _fmt(pub_lo), _fmt(pub_hi), _fmt(dev_lo), _fmt(dev_hi))
            )
        if published["bob"] is not None:
            interval = ranged["B1"]
            pub_lo, pub_hi = published["bob"]
            dev_lo = abs(interval.lo - pub_lo)
            dev_hi = abs(interval.hi - pub_hi)
            max_dev = max(max_dev, dev_lo, dev_hi)
            rows.append(
                (n, n_alices, "B1", _fmt(interval.lo), _fmt(interval.hi),
                 _fmt(pub_lo), _fmt(pub_hi), _fmt(dev_lo), _fmt(dev_hi))
            )
        computed_mu = min_purity(n, n_alices, 1)
        dev = abs(computed_mu - published["mu_min"])
        max_dev = max(max_dev, dev)
        rows.append(
            (n, n_alices, "mu_min", _fmt(computed_mu), _fmt(computed_mu),
             _fmt(published["mu_min"]), _fmt(published["mu_min"]),
             _fmt(dev), _fmt(dev))
        )
    if output_path is not None:
        with open(output_path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(header)
            writer.writerows(rows)
    print(f"rows={len(rows)}  max deviation from published values={max_dev:.4f}")
    return EXIT_OK


def _cmd_table1(args):
    return reproduce_table1(args.output)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="steerseq",
        description="Sequential unsharp-measurement steering analysis.",
    )
    parser.add_argument(
        "--config", help="JSON file of defaults; explicit flags override it"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--output", help="result file path")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("bounds", help="classical bounds per setting count")
    add_common(p)

    p = sub.add_parser("eval", help="evaluate one scenario")
    add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--alice", type=_parse_sharpness_list, required=True)
    p.add_argument("--bob", type=_parse_sharpness_list, required=True)
    p.add_argument("--verify", action="store_true",
                   help="cross-check against the density-matrix oracle")

    p = sub.add_parser("ranges", help="per-observer sharpness intervals")
    add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alices", type=int, required=True)
    p.add_argument("--mu", type=float, default=1.0)

    p = sub.add_parser("maxalices", help="longest violating Alice chain")
    add_common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--all", action="store_true",
                   help="report every supported setting count")

    p = sub.add_parser("minpurity", help="purity infimum for a layout")
    add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alices", type=int, required=True)
    p.add_argument("--bobs", type=int, default=1)

    p = sub.add_parser("region2x2", help="2-Alice/2-Bob joint region scan")
    add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--grid-step", type=float, default=DEFAULT_2D_STEP)

    p = sub.add_parser("check3x2", help="3-Alice/2-Bob overlap check")
    add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--grid-step", type=float, default=DEFAULT_3D_STEP)
    p.add_argument("--bobs", type=int, default=2, choices=(1, 2))

    p = sub.add_parser("verify", help="closed forms vs density-matrix oracle")
    add_common(p)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=7)

    p = sub.add_parser("table1", help="reproduce the full reference table")
    add_common(p)
    return parser


_HANDLERS = {
    "bounds": _cmd_bounds,
    "eval": _cmd_eval,
    "ranges": _cmd_ranges,
    "maxalices": _cmd_maxalices,
    "minpurity": _cmd_minpurity,
    "region2x2": _cmd_region2x2,
    "check3x2": _cmd_check3x2,
    "verify": _cmd_verify,
    "table1": _cmd_table1,
}


def _apply_config_file(parser, argv):
    """Pre-scan for --config and inject file values as parser defaults so
    that explicit flags keep priority."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    try:
        path = argv[idx + 1]
    except IndexError:
        raise ValueError("--config requires a path")
    with open(path, encoding="utf-8") as handle:
        data = json.load(handle)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    remaining = argv[:idx] + argv[idx + 2:]
    injected = []
    for key, value in sorted(data.items()):
        flag = "--" + str(key).replace("_", "-")
        if flag in remaining:
            continue
        if isinstance(value, bool):
            if value:
                injected.append(flag)
        else:
            injected.extend([flag, str(value)])
    if not remaining:
        raise ValueError("config file given but no subcommand")
    return [remaining[0]] + injected + remaining[1:]


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        argv = _apply_config_file(parser, argv)
        args = parser.parse_args(argv)
        if args.command == "maxalices" and not args.all and args.n is None:
            parser.error("maxalices needs --n or --all")
        if getattr(args, "n", None) is not None and args.n not in SUPPORTED_SETTINGS:
            print(f"error: unsupported n_settings: {args.n}", file=sys.stderr)
            return EXIT_INPUT_ERROR
        return _HANDLERS[args.command](args)
    except SystemExit as exc:
        return EXIT_INPUT_ERROR if exc.code else EXIT_OK
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
