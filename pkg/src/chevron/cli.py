"""Command-line interface.

Exit codes: 0 success, 2 input or usage error, 3 analysis failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from chevron import plotdata, report, synth, tables
from chevron.errors import AnalysisError, InputError
from chevron.fitting import BreakConfig
from chevron.pipeline import RunConfig, analyze_file, analyze_many, attach_pressure
from chevron.profiles import WindowConfig, iter_manifest
from chevron.relations import (REFERENCE_LINES, RelationError, cross_section, dump_records,
                               fit_b_vs_inv_beta, gradient_sign_of, load_records,
                               reference_deviation, select_constant_re_band)
from chevron.similarity import parse_pressure_series, parse_ustar_table

EXIT_OK, EXIT_INPUT, EXIT_ANALYSIS = 0, 2, 3

log = logging.getLogger("chevron")


class UsageError(InputError):
    pass


def _positive(kind):
    def conv(text):
        v = kind(text)
        if not v > 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return v
    return conv


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("analysis options")
    g.add_argument("--eta-min", type=_positive(float), default=30.0,
                   help="sublayer cut: first fitted eta (default 30)")
    g.add_argument("--outer-fraction", type=_positive(float), default=0.99,
                   help="exclude phi above this fraction of U/u* (default 0.99)")
    g.add_argument("--min-points", type=_positive(int), default=4)
    g.add_argument("--min-improvement", type=_positive(float), default=2.0)
    g.add_argument("--min-slope-gap", type=_positive(float), default=0.02)
    g.add_argument("--reject-inverted", action="store_true",
                   help="report no second layer when beta < alpha")
    g.add_argument("--re-band-tol", type=_positive(float), default=0.3)
    g.add_argument("--format", choices=("table", "csv", "json"), default="table")
    g.add_argument("--plot-dir", type=Path)
    g.add_argument("--seed", type=int)
    g.add_argument("-v", "--verbose", action="store_true")
    g.add_argument("-o", "--output", type=Path, help="write the report here instead of stdout")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="chevron", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="fit one station profile")
    a.add_argument("profile", type=Path)

    b = sub.add_parser("batch", parents=[common], help="fit every station listed in a manifest")
    b.add_argument("manifest", type=Path)
    b.add_argument("--records-out", type=Path, help="also write station records as JSON")
    b.add_argument("--jobs", type=_positive(int), default=1)

    pr = sub.add_parser("pressure", parents=[common], help="attach the pressure parameter P")
    pr.add_argument("cp_file", type=Path, help="C_p series (columns x,cp; header U, nu)")
    pr.add_argument("records", type=Path, help="station records JSON from batch")
    pr.add_argument("--ustar", type=Path, help="u_star table (columns x,u_star)")
    pr.add_argument("--smooth", type=_positive(int), help="odd moving-average width for C_p")
    pr.add_argument("--records-out", type=Path)

    r = sub.add_parser("relation", parents=[common], help="fit B against 1/beta")
    r.add_argument("records", type=Path)

    s = sub.add_parser("synth", parents=[common], help="generate synthetic chevron profiles")
    s.add_argument("spec", type=Path, nargs="?", help="JSON spec (single or batch)")
    s.add_argument("--ln-re", type=float)
    s.add_argument("--beta", type=float)
    s.add_argument("--break-eta", type=float)
    s.add_argument("--eta-range", type=float, nargs=2, metavar=("LO", "HI"))
    s.add_argument("--n-points", type=int)
    s.add_argument("--noise", type=float)
    s.add_argument("--station-id")
    s.add_argument("--out-dir", type=Path, default=Path("."))

    rep = sub.add_parser("report", parents=[common], help="fit and pressure report from records")
    rep.add_argument("records", type=Path, nargs="*")
    rep.add_argument("--fixture", choices=tables.SERIES, action="append",
                     help="use the built-in published station table")
    rep.add_argument("--records-out", type=Path)
    return parser


def config_from_args(args) -> RunConfig:
    return RunConfig(
        window=WindowConfig(args.eta_min, args.outer_fraction),
        break_cfg=BreakConfig(args.min_points, args.min_improvement, args.min_slope_gap,
                              allow_inverted=not args.reject_inverted),
        re_band_tol=args.re_band_tol,
        output_format=args.format,
        plot_dir=str(args.plot_dir) if args.plot_dir else None,
        smooth=getattr(args, "smooth", None),
    )


def _emit(args, text: str) -> None:
    if args.output:
        args.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_analyze(args, cfg: RunConfig) -> int:
    rec = analyze_file(args.profile, cfg)
    _emit(args, report.format_records([rec], cfg.output_format, cfg.to_dict()))
    return EXIT_OK


def cmd_batch(args, cfg: RunConfig) -> int:
    paths = list(iter_manifest(args.manifest))
    if not paths:
        raise UsageError(f"manifest {args.manifest} lists no profiles")
    results = analyze_many(paths, cfg, jobs=args.jobs)
    records, kinds = [], set()
    for path, res in zip(paths, results):
        if isinstance(res, Exception):
            kinds.add(EXIT_ANALYSIS if isinstance(res, AnalysisError) else EXIT_INPUT)
            print(f"chevron: {path}: {res}", file=sys.stderr)
        else:
            records.append(res)
    if not records:
        return EXIT_ANALYSIS if EXIT_ANALYSIS in kinds else EXIT_INPUT
    if args.records_out:
        dump_records(records, args.records_out, cfg.to_dict())
    _emit(args, report.format_records(records, cfg.output_format, cfg.to_dict()))
    return EXIT_OK


def cmd_pressure(args, cfg: RunConfig) -> int:
    with open(args.cp_file, "rb") as fh:
        series = parse_pressure_series(fh)
    ustar = None
    if args.ustar:
        with open(args.ustar, "rb") as fh:
            ustar = parse_ustar_table(fh)
    records = attach_pressure(load_records(args.records), series, ustar, cfg.smooth)
    for r in records:
        if r.P is None or r.flags:
            print(f"chevron: {r.station_id or r.meta.x}: {'; '.join(r.flags) or 'no P'}", file=sys.stderr)
    if args.records_out:
        dump_records(records, args.records_out, cfg.to_dict())
    if cfg.output_format == "table":
        _emit(args, report.format_table2(records) or "no station received P\n")
    else:
        _emit(args, report.format_records(records, cfg.output_format, cfg.to_dict()))
    return EXIT_OK


def _write_relation_plots(plot_dir: Path, fit, section) -> None:
    plot_dir.mkdir(parents=True, exist_ok=True)
    xs = [p[0] for p in fit.points]
    ys = [p[1] for p in fit.points]
    ids = [p[2] for p in fit.points]
    plotdata.write_xy(plot_dir / "b_inv_beta_points.dat", xs, ys, "inv_beta", "B", ids)
    grid = np.linspace(min(xs), max(xs), 50)
    plotdata.write_xy(plot_dir / "b_inv_beta_line.dat", grid, fit.predict(grid), "inv_beta", "B_fit")
    plotdata.write_svg(plot_dir / "b_inv_beta.svg", list(zip(xs, ys)), "1/beta", "B",
                       title=f"B(1/beta), {fit.gradient_sign}",
                       line=list(zip(grid, fit.predict(grid))))
    if section.beta_vs_P:
        for name, pts, ylabel in (("beta_vs_P", section.beta_vs_P, "beta"),
                                  ("B_vs_P", section.B_vs_P, "B")):
            px = [p[0] for p in pts]
            py = [p[1] for p in pts]
            plotdata.write_xy(plot_dir / f"{name}.dat", px, py, "P", ylabel, [p[2] for p in pts])
            plotdata.write_svg(plot_dir / f"{name}.svg", list(zip(px, py)), "P", ylabel,
                               title=f"{ylabel}(P)")


def cmd_relation(args, cfg: RunConfig) -> int:
    records = load_records(args.records)
    if not records:
        raise UsageError("no station records")
    sign = gradient_sign_of(records)
    band = select_constant_re_band(records, cfg.re_band_tol)
    fit = fit_b_vs_inv_beta(band)
    ref = REFERENCE_LINES.get(sign)
    dev = reference_deviation(fit, *ref) if ref else None
    _emit(args, report.format_relation(fit, cfg.output_format, cfg.to_dict(), ref, dev))
    if cfg.plot_dir:
        _write_relation_plots(Path(cfg.plot_dir), fit, cross_section(band))
    return EXIT_OK


def cmd_synth(args, cfg: RunConfig) -> int:
    overrides = {k: v for k, v in (
        ("ln_re_lambda", args.ln_re), ("beta", args.beta), ("break_eta", args.break_eta),
        ("eta_range", tuple(args.eta_range) if args.eta_range else None),
        ("n_points", args.n_points), ("noise_sigma", args.noise), ("seed", args.seed),
        ("station_id", args.station_id)) if v is not None}
    if args.spec:
        specs = synth.load_specs(args.spec)
        if overrides:
            if len(specs) != 1:
                raise UsageError("flag overrides only apply to single-station specs")
            specs = [synth.SyntheticSpec.from_dict({**specs[0].__dict__, **overrides})]
    else:
        missing = [f for f in ("ln_re_lambda", "beta", "break_eta") if f not in overrides]
        if missing:
            raise UsageError(f"without a spec file, --ln-re, --beta and --break-eta are required")
        specs = [synth.SyntheticSpec.from_dict(overrides)]
    paths, truths = synth.write_batch(specs, args.out_dir)
    rows = [["file", "A", "alpha", "B", "beta", "break_eta", "break_index"]]
    rows += [[p.name, f"{t.A:.6g}", f"{t.alpha:.6g}", f"{t.B:.6g}", f"{t.beta:.6g}",
              f"{t.break_eta:.6g}", str(t.break_index)] for p, t in zip(paths, truths)]
    _emit(args, report._align(rows))
    return EXIT_OK


def cmd_report(args, cfg: RunConfig) -> int:
    records = []
    for name in args.fixture or ():
        records.extend(tables.table1_records(name))
    for path in args.records:
        records.extend(load_records(path))
    if not records:
        raise UsageError("give records files or --fixture")
    if args.records_out:
        dump_records(records, args.records_out, cfg.to_dict())
    _emit(args, report.format_records(records, cfg.output_format, cfg.to_dict()))
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "batch": cmd_batch, "pressure": cmd_pressure,
            "relation": cmd_relation, "synth": cmd_synth, "report": cmd_report}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="chevron: %(message)s")
    try:
        return COMMANDS[args.command](args, config_from_args(args))
    except AnalysisError as exc:
        print(f"chevron: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS
    except (InputError, OSError, ValueError) as exc:
        print(f"chevron: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
