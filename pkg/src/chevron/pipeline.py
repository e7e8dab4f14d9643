"""Station-level analysis pipeline shared by the CLI subcommands."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from chevron.fitting import BreakConfig, fit_chevron
from chevron.profiles import Profile, WindowConfig, fit_window, nondimensionalize, read_profile
from chevron.relations import StationRecord
from chevron.similarity import (PressureParameter, PressureSeries, WallLawParams,
                                invert_wall_law, pressure_gradient, similarity_parameter)

X_MATCH_TOL = 1e-6
OUTPUT_FORMATS = ("table", "csv", "json")


@dataclass(frozen=True)
class RunConfig:
    window: WindowConfig = field(default_factory=WindowConfig)
    break_cfg: BreakConfig = field(default_factory=BreakConfig)
    re_band_tol: float = 0.3
    output_format: str = "table"
    plot_dir: str | None = None
    smooth: int | None = None

    def __post_init__(self):
        if not self.re_band_tol > 0:
            raise ValueError("re_band_tol must be positive")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"output_format must be one of {OUTPUT_FORMATS}")

    def to_dict(self) -> dict:
        return {
            "eta_min": self.window.eta_min,
            "outer_fraction": self.window.outer_fraction,
            "min_points": self.break_cfg.min_points,
            "min_improvement": self.break_cfg.min_improvement,
            "min_slope_gap": self.break_cfg.min_slope_gap,
            "allow_inverted": self.break_cfg.allow_inverted,
            "re_band_tol": self.re_band_tol,
            "smooth": self.smooth,
        }


def analyze_profile(profile: Profile, config: RunConfig = RunConfig()) -> StationRecord:
    """nondimensionalize -> fit_window -> fit_chevron -> invert_wall_law."""
    dp = nondimensionalize(profile)
    window = fit_window(dp, config.window)
    fit = fit_chevron(dp, window, config.break_cfg)
    seg1 = fit.segment1
    sim = invert_wall_law(WallLawParams(seg1.coeff, seg1.exponent))
    return StationRecord(dp.meta, fit, sim)


def analyze_file(path: str | Path, config: RunConfig = RunConfig()) -> StationRecord:
    return analyze_profile(read_profile(path), config)


def analyze_many(paths: list[Path], config: RunConfig = RunConfig(), jobs: int = 1
                 ) -> list[StationRecord | Exception]:
    """Analyze stations, returning records or the exception, in input order."""
    def one(path):
        try:
            return analyze_file(path, config)
        except Exception as exc:  # reported per station by the caller
            return exc

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, paths))
    return [one(p) for p in paths]


def _lookup(xs: np.ndarray, vs: np.ndarray, x: float) -> float | None:
    """Nearest value within X_MATCH_TOL, else linear interpolation inside coverage."""
    i = int(np.argmin(np.abs(xs - x)))
    if abs(xs[i] - x) <= X_MATCH_TOL:
        return float(vs[i])
    if x < xs[0] or x > xs[-1]:
        return None
    return float(np.interp(x, xs, vs))


def attach_pressure(records: list[StationRecord], series: PressureSeries,
                    ustar: tuple[np.ndarray, np.ndarray] | None = None,
                    smooth: int | None = None) -> list[StationRecord]:
    """Return copies of ``records`` carrying the pressure-gradient parameter.

    Stations that cannot be matched keep ``P=None`` and gain a flag.
    """
    grad = pressure_gradient(series, smooth)
    gx = np.array([g[0] for g in grad])
    gv = np.array([g[1] for g in grad])
    out = []
    for r in records:
        flags = list(r.flags)
        x = r.meta.x
        P = None
        if x is None:
            flags.append("station has no x")
        else:
            dcp = _lookup(gx, gv, x)
            if ustar is not None:
                us = _lookup(ustar[0], ustar[1], x)
            else:
                us = r.meta.u_star
            U = series.U if series.U is not None else r.meta.U
            nu = series.nu if series.nu is not None else r.meta.nu
            if dcp is None:
                flags.append("station x outside C_p coverage")
            elif us is None:
                flags.append("no u_star for station")
            elif U is None or nu is None:
                flags.append("U or nu unknown for station")
            else:
                P = PressureParameter(x, similarity_parameter(dcp, U, us, nu), dcp)
                sign = r.meta.gradient_sign
                if (sign == "adverse" and P.P < 0) or (sign == "favourable" and P.P > 0):
                    flags.append("P sign contradicts gradient_sign")
        out.append(replace(r, P=P, flags=tuple(flags)))
    return out
