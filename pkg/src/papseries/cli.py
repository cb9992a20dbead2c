"""Command-line front end.

Subcommands: enumerate, classify, analyze, bounds, extend. Every command
is deterministic given its flags: fixed precision, fixed config grids,
byte-identical reports for identical invocations.

Exit codes: 0 success, 1 usage error, 2 computation error, 3 resource cap.
The default working precision comes from PAPSERIES_PRECISION (100 digits
otherwise) and can be overridden per invocation with --precision.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import mpmath as mp

from . import analysis, dapprox, stieltjes
from .dataset import CLASS_ORDER, OEIS_IDS, WILF_SERIES, dataset_series
from .permutations import (ResourceCapExceeded, classify_wilf, count_avoiders,
                           parse_pattern)
from .precision import precision, to_mpf
from .series import BFileError, ExactSeries, export, ingest_bfile

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTE = 2
EXIT_RESOURCE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="papseries",
                description="Enumeration and series analysis of "
                            "pattern-avoiding permutations")
    p.add_argument("--precision", type=int, default=None,
                   help="working precision in decimal digits "
                        "(default: PAPSERIES_PRECISION or 100)")
    p.add_argument("--threads", type=int, default=1,
                   help="worker threads for enumeration/classification")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for randomized test data (unused by the "
                        "deterministic pipelines)")
    p.add_argument("--format", choices=("json", "csv", "text"), default="text",
                   help="output format where applicable")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="count avoiders of pattern(s)")
    e.add_argument("--pattern", action="append", required=True,
                   help="pattern in one-line notation, e.g. 25314; repeatable")
    e.add_argument("--max-n", type=int, required=True)
    e.add_argument("--max-seconds", type=float, default=None,
                   help="time budget; exceeding it returns a partial result")
    e.add_argument("--out", type=Path, default=None)

    c = sub.add_parser("classify", help="empirical Wilf classification")
    c.add_argument("--length", type=int, required=True)
    c.add_argument("--max-n", type=int, required=True)

    a = sub.add_parser("analyze", help="asymptotic analysis pipeline")
    a.add_argument("--series", required=True,
                   help="embedded name (12345, Av(12345), A047889) or b-file path")
    a.add_argument("--mode", choices=("powerlaw", "stretched"), required=True)
    a.add_argument("--sigma", default=None,
                   help="stretch exponent as a fraction, e.g. 1/3 (stretched mode)")
    a.add_argument("--mu", default=None,
                   help="fix the growth constant instead of estimating it")
    a.add_argument("--g", dest="g_conjectured", default=None,
                   help="conjectured exponent for amplitude fitting (powerlaw)")
    a.add_argument("--extend", type=int, default=0,
                   help="predicted ratios/coefficients to append before analysis")
    a.add_argument("--window", type=int, default=10,
                   help="tail-extrapolation window")
    a.add_argument("--plot-dir", type=Path, default=None,
                   help="write two-column plot files per estimator here")
    a.add_argument("--out", type=Path, default=None)

    b = sub.add_parser("bounds", help="log-convexity and moment lower bounds")
    b.add_argument("--series", required=True)
    b.add_argument("--theta", default="1",
                   help="ratio-correction power for bound extrapolation "
                        "(1 power law, 1-sigma stretched)")
    b.add_argument("--out", type=Path, default=None)

    x = sub.add_parser("extend", help="predict further coefficients/ratios")
    x.add_argument("--series", required=True)
    x.add_argument("--count", type=int, required=True)
    x.add_argument("--orders", default="2,3",
                   help="comma-separated approximant orders (default 2,3)")
    x.add_argument("--prefix", type=int, default=None,
                   help="use only the first n coefficients")
    x.add_argument("--out", type=Path, default=None)
    return p


def _load_series(ref: str) -> ExactSeries:
    try:
        return dataset_series(ref)
    except KeyError:
        pass
    path = Path(ref)
    if path.exists():
        return ingest_bfile(path.read_text(encoding="utf-8"), name=path.stem)
    raise UsageError(
        f"unknown series {ref!r}: not an embedded name "
        f"({', '.join(CLASS_ORDER)} or an OEIS id) and no such file")


def _emit(text: str, out: Path | None):
    if out is not None:
        out.write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _fraction(text, what):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{what} must be a rational number, got {text!r}")


def _cmd_enumerate(args) -> int:
    patterns = [parse_pattern(t) for t in args.pattern]
    rc = EXIT_OK
    try:
        cv = count_avoiders(patterns, args.max_n, threads=args.threads,
                            max_seconds=args.max_seconds)
    except ResourceCapExceeded as exc:
        cv = exc.partial
        rc = EXIT_RESOURCE
        print(f"# resource cap hit; complete to n={cv.complete_to}",
              file=sys.stderr)
    name = "Av(" + ",".join("".join(map(str, p)) for p in cv.patterns) + ")"
    s = ExactSeries(name, cv.counts[:cv.complete_to + 1])
    if args.format == "json":
        _emit(export(s, "json"), args.out)
    elif args.format == "csv":
        _emit(export(s, "csv"), args.out)
    else:
        _emit(export(s, "bfile"), args.out)
    return rc


def _cmd_classify(args) -> int:
    classes = classify_wilf(args.length, args.max_n, threads=args.threads)
    if args.format == "json":
        obj = [{"representative": "".join(map(str, c.representative)),
                "patterns": ["".join(map(str, p)) for p in c.patterns],
                "counts": [str(v) for v in c.counts]} for c in classes]
        print(json.dumps(obj, indent=2))
    else:
        print(f"{len(classes)} Wilf classes of length {args.length} "
              f"(separated up to n={args.max_n})")
        for i, c in enumerate(classes, 1):
            pats = " ".join("".join(map(str, p)) for p in c.patterns)
            tail = c.counts[-1]
            print(f"class {i:2d} size {len(c.patterns):3d}  "
                  f"s_{args.max_n}={tail}  {pats}")
    return EXIT_OK


def _write_plots(rep, plot_dir: Path):
    plot_dir.mkdir(parents=True, exist_ok=True)
    for seq in rep.estimator_sequences:
        safe = seq.label.replace("/", "_").replace("[", ".").replace("]", "")
        lines = [f"# {seq.label}: abscissa n^-{seq.abscissa_power}, value"]
        for x, v in seq.plot_columns():
            lines.append(f"{mp.nstr(x, 20)}\t{mp.nstr(v, 20)}")
        (plot_dir / f"{safe}.dat").write_text("\n".join(lines) + "\n",
                                              encoding="utf-8")


def _cmd_analyze(args) -> int:
    series = _load_series(args.series)
    if args.mode == "stretched":
        if args.sigma is None:
            raise UsageError("stretched mode requires --sigma")
        sigma = _fraction(args.sigma, "--sigma")
        mu = to_mpf(_fraction(args.mu, "--mu")) if args.mu else None
        rep = analysis.analyze_stretched(series, sigma, mu_fixed=mu,
                                         extend_count=args.extend,
                                         window=args.window)
    else:
        g = to_mpf(_fraction(args.g_conjectured, "--g")) \
            if args.g_conjectured else None
        rep = analysis.analyze_powerlaw(series, extend_count=args.extend,
                                        g_conjectured=g, window=args.window)
    if args.plot_dir is not None:
        _write_plots(rep, args.plot_dir)
    if args.format in ("json", "csv"):
        _emit(json.dumps(rep.to_dict(), indent=2), args.out)
    else:
        lines = [f"analysis of {rep.series} ({rep.mode})"]
        for name, entry in rep.estimates.items():
            unc = f" +- {entry['uncertainty']}" if "uncertainty" in entry else ""
            lines.append(f"  {name:24s} {entry['value']}{unc}   "
                         f"[{entry['estimator']}]")
        for name, val in rep.diagnostics.items():
            lines.append(f"  {name:24s} {val}")
        lc = rep.bounds["log_convexity"]
        ts = rep.bounds["tail_substitution"]
        lines.append(f"  lower bound (log-convexity) {lc['value']} at n={lc['at_n']}")
        lines.append(f"  lower bound (moment tails)  {ts['value']} at n={ts['at_n']}"
                     f" [{rep.bounds['stieltjes_status']}]")
        _emit("\n".join(lines), args.out)
    return EXIT_OK


def _cmd_bounds(args) -> int:
    series = _load_series(args.series)
    theta = _fraction(args.theta, "--theta")
    rep = analysis.bounds_report(series, theta=theta)
    rep["series"] = series.name
    rep["alphas"] = stieltjes.sfraction(series).alpha_strings()
    if args.format == "text":
        lines = [f"bounds for {series.name} "
                 f"[{rep['stieltjes_status']}]",
                 f"  log-convexity : {rep['log_convexity']['value']} "
                 f"(ratio at n={rep['log_convexity']['at_n']})",
                 f"  moment tails  : {rep['tail_substitution']['value']} "
                 f"(depth {rep['tail_substitution']['depth']}, "
                 f"at n={rep['tail_substitution']['at_n']})"]
        if rep["extrapolated"]:
            lines.append(f"  extrapolated  : {rep['extrapolated']['value']} "
                         f"(vs n^-{rep['extrapolated']['abscissa_power']})")
        _emit("\n".join(lines), args.out)
    else:
        _emit(json.dumps(rep, indent=2), args.out)
    return EXIT_OK


def _cmd_extend(args) -> int:
    series = _load_series(args.series)
    if args.prefix:
        series = series.prefix(args.prefix)
    orders = tuple(int(x) for x in args.orders.split(","))
    ens = dapprox.extend_series(series, args.count, orders=orders)
    ext = series.with_tail(ens.predicted_tail(), ens.predicted_ratio_tail())
    if args.format == "text":
        lines = [f"extension of {series.name}: {args.count} predicted terms, "
                 f"{len(ens.surviving())}/{len(ens.members)} members"]
        for (n, v), (_, u) in zip(ens.ratio_mean, ens.ratio_std):
            lines.append(f"r_{n} {mp.nstr(v, 12)} +- {mp.nstr(u, 3)}")
        _emit("\n".join(lines), args.out)
    elif args.format == "csv":
        _emit(export(ext, "csv"), args.out)
    else:
        obj = json.loads(export(ext, "json"))
        obj["ensemble"] = analysis.extension_summary(ens)
        _emit(json.dumps(obj, indent=2), args.out)
    return EXIT_OK


_COMMANDS = {
    "enumerate": _cmd_enumerate,
    "classify": _cmd_classify,
    "analyze": _cmd_analyze,
    "bounds": _cmd_bounds,
    "extend": _cmd_extend,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        with precision(args.precision):
            return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, ArithmeticError, RuntimeError, BFileError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
