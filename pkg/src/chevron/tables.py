"""Published station tables for the Marusic (adverse gradient) and Jones
(favourable gradient) boundary-layer series, as reproducible fixtures.

Values are transcribed verbatim, including the apparent misprints (station
x=1.24 in the U=30 m/s series sits between 1.80 and 2.64).
"""
from __future__ import annotations

from dataclasses import dataclass

from chevron.fitting import ChevronFit, SegmentFit
from chevron.profiles import StationMeta
from chevron.relations import StationRecord
from chevron.similarity import PressureParameter, WallLawParams, invert_wall_law


@dataclass(frozen=True)
class Table1Row:
    series: str
    U: float
    x: float
    re_theta: float
    alpha: float
    A: float
    beta: float | None
    B: float | None
    ln_re1: float
    ln_re2: float
    ln_re_lambda: float
    delta_pct: float


_SERIES_SIGN = {"marusic-10": "adverse", "marusic-30": "adverse", "jones-10": "favourable"}
_SERIES_U = {"marusic-10": 10.0, "marusic-30": 30.0, "jones-10": 10.0}

_TABLE1_TEXT = {
    "marusic-10": """
1.20 2206 0.143 8.53 0.203 6.18 10.44 10.51 10.48 0.7
1.80 3153 0.150 8.30 0.227 5.45 10.05 10.03 10.04 0.2
2.24 4155 0.156 8.15 0.269 4.34 9.79 9.88 9.84 0.9
2.64 5395 0.171 7.54 0.345 2.87 8.73 8.77 8.75 0.5
2.88 6358 0.167 7.63 0.408 2.00 8.89 8.98 8.93 1.1
3.08 7257 0.169 7.57 0.450 1.64 8.78 8.88 8.83 1.2
""",
    "marusic-30": """
1.20 6430 0.140 8.45 0.190 6.08 10.30 10.72 10.51 3.9
1.80 8588 0.145 8.41 0.207 5.63 10.24 10.32 10.28 0.8
1.24 10997 0.145 8.44 0.247 4.31 10.29 10.32 10.31 0.4
2.64 14208 0.147 8.39 0.306 2.91 10.20 10.20 10.20 0.1
2.88 16584 0.148 8.38 0.346 2.23 10.19 10.17 10.18 0.2
3.08 19133 0.145 8.45 0.388 1.71 10.31 10.35 10.33 0.4
""",
    "jones-10": """
0.18 855 0.144 8.39 0.20 6.36 10.21 10.45 10.33 2.4
0.40 1122 0.144 8.37 0.176 7.11 10.17 10.40 10.29 2.2
0.60 1314 0.146 8.28 0.168 7.41 10.01 10.25 10.13 2.4
0.80 1466 0.148 8.19 0.166 7.47 9.86 10.11 9.98 2.5
1.00 1616 0.144 8.38 0.160 7.68 10.19 10.44 10.31 2.5
1.20 1745 0.145 8.35 0.156 7.84 10.13 10.38 10.25 2.4
1.40 1888 0.142 8.44 0.153 7.99 10.29 10.55 10.42 2.5
1.60 2039 0.142 8.45 0.150 8.10 10.28 10.53 10.41 2.4
1.80 2150 0.143 8.41 0.148 8.18 10.23 10.50 10.36 2.6
2.00 2299 0.141 8.49 0.144 8.35 10.37 10.62 10.50 2.4
2.20 2411 0.144 8.37 --- --- 10.17 10.43 10.30 2.5
2.40 2489 0.139 8.57 --- --- 10.52 10.78 10.65 2.4
2.60 2574 0.145 8.32 --- --- 10.08 10.36 10.22 2.7
2.80 2683 0.142 8.47 --- --- 10.34 10.60 10.47 2.5
2.92 2728 0.145 8.31 --- --- 10.06 10.33 10.19 2.7
3.04 2819 0.149 8.15 --- --- 9.79 10.06 9.92 2.8
3.16 2832 0.147 8.24 --- --- 9.94 10.20 10.07 2.6
3.28 2946 0.149 8.14 --- --- 9.77 10.05 9.91 2.8
3.40 2987 0.142 8.46 --- --- 10.32 10.60 10.46 2.7
3.48 3026 0.145 8.33 --- --- 10.11 10.38 10.24 2.7
3.54 3032 0.146 8.29 --- --- 10.03 10.30 10.16 2.7
3.58 3100 0.146 8.27 --- --- 9.99 10.28 10.13 2.9
3.62 3029 0.147 8.20 --- --- 9.88 10.20 10.04 3.2
""",
}

# Pressure parameter P*10^3 (signed) with the reported ln Re_L, keyed by Re_theta.
TABLE2 = {
    "marusic-30": [(6430, 0.0, 10.5), (8588, 1.75, 10.3), (10997, 2.86, 10.3),
                   (14208, 4.2, 10.2), (16584, 5.79, 10.2), (19133, 7.04, 10.3)],
    "jones-10": [(855, -1.8, 10.3), (1122, -2.36, 10.3), (1314, -2.69, 10.1),
                 (1466, -2.78, 10.0), (1616, -2.76, 10.3), (1745, -2.8, 10.2)],
}

SERIES = tuple(_TABLE1_TEXT)


def _num(tok: str) -> float | None:
    return None if tok == "---" else float(tok)


def table1(series: str | None = None) -> list[Table1Row]:
    names = SERIES if series is None else (series,)
    rows = []
    for name in names:
        if name not in _TABLE1_TEXT:
            raise KeyError(f"unknown series {name!r}; choose from {SERIES}")
        for line in _TABLE1_TEXT[name].strip().splitlines():
            t = line.split()
            rows.append(Table1Row(name, _SERIES_U[name], float(t[0]), float(t[1]), float(t[2]),
                                  float(t[3]), _num(t[4]), _num(t[5]), *map(float, t[6:10])))
    return rows


def record_from_row(row: Table1Row, with_pressure: bool = True) -> StationRecord:
    """StationRecord carrying the row's reported coefficients (no samples)."""
    meta = StationMeta(station_id=f"{row.series}:{row.re_theta:.0f}", x=row.x, U=row.U,
                       re_theta=row.re_theta, gradient_sign=_SERIES_SIGN[row.series])
    seg1 = SegmentFit(row.A, row.alpha)
    if row.beta is not None:
        fit = ChevronFit(seg1, SegmentFit(row.B, row.beta), region2_present=True)
    else:
        fit = ChevronFit(seg1)
    P = None
    if with_pressure:
        for re_theta, p1e3, _ in TABLE2.get(row.series, ()):
            if re_theta == row.re_theta:
                P = PressureParameter(row.x, p1e3 * 1e-3)
    return StationRecord(meta, fit, invert_wall_law(WallLawParams(row.A, row.alpha)), P)


def table1_records(series: str, with_pressure: bool = True) -> list[StationRecord]:
    return [record_from_row(r, with_pressure) for r in table1(series)]
