"""Table-style reports for station records.

Reporting precision: three significant figures for alpha, A, beta and B,
two decimals for the ln Re columns, one decimal for Delta (percent), two
decimals for P*10^3.
"""
from __future__ import annotations

import csv
import io
import json
import math

from chevron.relations import RelationFit, StationRecord

ABSENT = "---"
TABLE1_COLUMNS = ("x, m", "Re_theta", "alpha", "A", "beta", "B",
                  "ln Re1", "ln Re2", "ln ReL", "Delta")
CSV_COLUMNS = ("station_id", "x", "re_theta", "alpha", "A", "beta", "B",
               "ln_re1", "ln_re2", "ln_re_lambda", "delta_pct", "region2_present")


def sig3(v: float | None) -> str:
    """Three significant figures, keeping trailing zeros (0.2 -> '0.200')."""
    if v is None:
        return ABSENT
    if v == 0:
        return "0.00"
    r = float(f"{v:.3g}")
    decimals = max(0, 2 - int(math.floor(math.log10(abs(r)))))
    return f"{r:.{decimals}f}"


def fixed(v: float | None, decimals: int) -> str:
    return ABSENT if v is None else f"{v:.{decimals}f}"


def thousands(v: float | None) -> str:
    return ABSENT if v is None else f"{v:,.0f}"


def record_values(r: StationRecord) -> dict:
    """Full-precision numeric row shared by every output format."""
    s2 = r.fit.segment2 if r.fit.region2_present else None
    return {
        "station_id": r.station_id,
        "x": r.meta.x,
        "re_theta": r.meta.re_theta,
        "alpha": r.fit.segment1.exponent,
        "A": r.fit.segment1.coeff,
        "beta": s2.exponent if s2 else None,
        "B": s2.coeff if s2 else None,
        "ln_re1": r.sim.ln_re1,
        "ln_re2": r.sim.ln_re2,
        "ln_re_lambda": r.sim.ln_re_lambda,
        "delta_pct": r.sim.delta_pct,
        "region2_present": r.fit.region2_present,
    }


def table1_cells(r: StationRecord) -> list[str]:
    v = record_values(r)
    return [fixed(v["x"], 2), thousands(v["re_theta"]), sig3(v["alpha"]), sig3(v["A"]),
            sig3(v["beta"]), sig3(v["B"]), fixed(v["ln_re1"], 2), fixed(v["ln_re2"], 2),
            fixed(v["ln_re_lambda"], 2), fixed(v["delta_pct"], 1)]


def _align(rows: list[list[str]]) -> str:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() for row in rows) + "\n"


def format_table1(records: list[StationRecord]) -> str:
    return _align([list(TABLE1_COLUMNS)] + [table1_cells(r) for r in records])


def format_csv(records: list[StationRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        v = record_values(r)
        w.writerow(["" if v[c] is None else (repr(v[c]) if isinstance(v[c], float) else v[c])
                    for c in CSV_COLUMNS])
    return buf.getvalue()


def format_json(records: list[StationRecord], config: dict | None = None, **extra) -> str:
    doc = {"config": config or {}, "records": [r.to_dict() for r in records]}
    doc.update(extra)
    return json.dumps(doc, indent=2) + "\n"


def p_times_1e3(P: float, favourable: bool) -> str:
    """P*10^3 to two decimals; favourable blocks show -P*10^3."""
    v = (-P if favourable else P) * 1e3
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def format_table2(records: list[StationRecord]) -> str:
    """Transposed Re_theta / P*10^3 / ln Re_L blocks, one per gradient sign."""
    with_p = [r for r in records if r.P is not None]
    if not with_p:
        return ""
    blocks = []
    for favourable in (False, True):
        group = [r for r in with_p if (r.meta.gradient_sign == "favourable") == favourable]
        if not group:
            continue
        rows = [
            ["Re_theta"] + [thousands(r.meta.re_theta) for r in group],
            ["-P*10^3" if favourable else "P*10^3"] + [p_times_1e3(r.P.P, favourable) for r in group],
            ["ln ReL"] + [fixed(r.sim.ln_re_lambda, 2) for r in group],
        ]
        widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
        blocks.append("\n".join(
            row[0].ljust(widths[0]) + "  " + "  ".join(c.rjust(w) for c, w in zip(row[1:], widths[1:]))
            for row in rows) + "\n")
    return "\n".join(blocks)


def format_records(records: list[StationRecord], fmt: str, config: dict | None = None) -> str:
    if fmt == "table":
        out = format_table1(records)
        t2 = format_table2(records)
        return out + ("\n" + t2 if t2 else "")
    if fmt == "csv":
        return format_csv(records)
    if fmt == "json":
        return format_json(records, config)
    raise ValueError(f"unknown format {fmt!r}")


def format_relation(fit: RelationFit, fmt: str, config: dict | None = None,
                    reference: tuple[float, float] | None = None,
                    reference_dev: float | None = None) -> str:
    if fmt == "json":
        doc = {"config": config or {}, "relation": fit.to_dict()}
        if reference is not None:
            doc["reference_line"] = {"slope": reference[0], "intercept": reference[1],
                                     "max_abs_deviation": reference_dev}
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("station_id", "inv_beta", "B", "residual"))
        for (x, y, sid), e in zip(fit.points, fit.residuals):
            w.writerow((sid, repr(x), repr(y), repr(e)))
        return buf.getvalue()
    lo, hi = fit.ln_re_lambda_band
    lines = [
        f"B = {fit.slope:.4f} / beta {'+' if fit.intercept >= 0 else '-'} {abs(fit.intercept):.4f}",
        f"gradient: {fit.gradient_sign}   ln ReL band: {lo:.2f} .. {hi:.2f}   stations: {len(fit.points)}",
    ]
    if reference is not None:
        lines.append(f"reference B = {reference[0]:.2f} / beta {'+' if reference[1] >= 0 else '-'} "
                     f"{abs(reference[1]):.2f}; max |dB| over stations = {reference_dev:.3f}")
    rows = [["station", "1/beta", "B", "residual"]]
    rows += [[sid, f"{x:.3f}", sig3(y), f"{e:+.3f}"] for (x, y, sid), e in zip(fit.points, fit.residuals)]
    return "\n".join(lines) + "\n\n" + _align(rows)
