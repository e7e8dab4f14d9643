"""Inner-layer similarity arithmetic and the pressure-gradient parameter.

The inner-layer law ``phi = A eta**alpha`` has

    A = ln(Re_L) / sqrt(3) + 5/2,     alpha = 3 / (2 ln(Re_L)).

Inverting each relation separately gives two estimates of ln(Re_L); their
mean is the effective Reynolds number and their relative gap ``delta_pct``
measures self-consistency.

The pressure-gradient parameter is ``P = nu dp/dx / (rho u*^3)``.  With
``dp/dx = rho U^2 dCp/dx / 2`` the density cancels.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from chevron.errors import InputError
from chevron.profiles import Source, read_columns

SQRT3 = math.sqrt(3.0)
LOG_FLOOR = 2.5


class SimilarityError(InputError):
    pass


@dataclass(frozen=True)
class WallLawParams:
    A: float
    alpha: float


@dataclass(frozen=True)
class SimilarityResult:
    ln_re1: float
    ln_re2: float
    ln_re_lambda: float
    delta_pct: float

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "SimilarityResult":
        return cls(**{k: float(d[k]) for k in ("ln_re1", "ln_re2", "ln_re_lambda", "delta_pct")})


def wall_law_from_re(ln_re_lambda: float) -> WallLawParams:
    if not ln_re_lambda > 0:
        raise SimilarityError(f"ln Re_Lambda must be positive, got {ln_re_lambda!r}")
    return WallLawParams(A=ln_re_lambda / SQRT3 + LOG_FLOOR, alpha=3.0 / (2.0 * ln_re_lambda))


def consistency_pct(ln_re1: float, ln_re2: float) -> float:
    return 100.0 * 2.0 * abs(ln_re1 - ln_re2) / (ln_re1 + ln_re2)


def invert_wall_law(p: WallLawParams) -> SimilarityResult:
    """Solve both inner-law relations for ln(Re_L) independently."""
    if not p.A > LOG_FLOOR:
        raise SimilarityError(f"prefactor below logarithmic floor: A={p.A!r} <= 5/2")
    if not p.alpha > 0:
        raise SimilarityError(f"exponent must be positive, got alpha={p.alpha!r}")
    ln_re1 = SQRT3 * (p.A - LOG_FLOOR)
    ln_re2 = 3.0 / (2.0 * p.alpha)
    return SimilarityResult(ln_re1, ln_re2, (ln_re1 + ln_re2) / 2.0, consistency_pct(ln_re1, ln_re2))


# -- pressure gradient -------------------------------------------------------

@dataclass(frozen=True)
class PressureSeries:
    """Streamwise pressure-coefficient samples for one experiment series."""

    x: np.ndarray
    cp: np.ndarray
    U: float | None = None
    nu: float | None = None

    def __post_init__(self):
        x = np.array(self.x, dtype=float)
        cp = np.array(self.cp, dtype=float)
        if x.ndim != 1 or x.shape != cp.shape:
            raise SimilarityError("x and cp must be 1-D arrays of equal length")
        if x.size < 2:
            raise SimilarityError("pressure series needs at least 2 stations")
        steps = np.diff(x)
        if np.any(steps == 0):
            raise SimilarityError("duplicate x values in pressure series")
        if np.any(steps < 0):
            raise SimilarityError("pressure series x must be strictly increasing")
        x.setflags(write=False)
        cp.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "cp", cp)


@dataclass(frozen=True)
class PressureParameter:
    x: float
    P: float
    dcp_dx: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "PressureParameter":
        g = d.get("dcp_dx")
        return cls(float(d["x"]), float(d["P"]), float(g) if g is not None else None)


def moving_average(values: np.ndarray, window: int) -> np.ndarray:
    """Centred moving average; the window shrinks symmetrically at the ends."""
    if window < 1 or window % 2 == 0:
        raise SimilarityError("smoothing window must be a positive odd integer")
    half = window // 2
    n = values.size
    out = np.empty(n)
    for i in range(n):
        h = min(half, i, n - 1 - i)
        out[i] = values[i - h:i + h + 1].mean()
    return out


def _three_point(x: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Derivative of the local interpolating quadratic, in divided-difference form.

    Built from first differences only, so constant data give exactly zero.
    """
    h = np.diff(x)
    s = np.diff(f) / h
    out = np.empty_like(f)
    # interior nodes: quadratic through (i-1, i, i+1)
    h0, h1 = h[:-1], h[1:]
    out[1:-1] = s[:-1] + h0 * (s[1:] - s[:-1]) / (h0 + h1)
    # one-sided at the ends
    out[0] = s[0] - h[0] * (s[1] - s[0]) / (h[0] + h[1])
    out[-1] = s[-2] + (h[-2] + 2 * h[-1]) * (s[-1] - s[-2]) / (h[-2] + h[-1])
    return out


def pressure_gradient(series: PressureSeries, smooth: int | None = None) -> list[tuple[float, float]]:
    """dCp/dx at each station.

    Second-order three-point differences on the non-uniform grid: central
    inside, one-sided at the ends.  Two-station series get the plain
    difference quotient.  ``smooth`` optionally applies a centred moving
    average of that (odd) width to Cp first.
    """
    cp = series.cp if smooth is None else moving_average(series.cp, smooth)
    if series.x.size == 2:
        g = np.full(2, (cp[1] - cp[0]) / (series.x[1] - series.x[0]))
    else:
        g = _three_point(series.x, cp)
    return list(zip(series.x.tolist(), g.tolist()))


def similarity_parameter(dcp_dx: float, U: float, u_star: float, nu: float) -> float:
    """P = nu (U^2/2) dCp/dx / u*^3."""
    if not u_star > 0 or not nu > 0:
        raise SimilarityError("u_star and nu must be positive")
    return nu * (U * U / 2.0) * dcp_dx / u_star ** 3


def parse_pressure_series(source: Source) -> PressureSeries:
    table = read_columns(source)
    if table.columns is not None and table.columns != ("x", "cp"):
        raise SimilarityError(f"pressure file must have columns x,cp, got {','.join(table.columns)}")
    U = float(table.header["U"]) if "U" in table.header else None
    nu = float(table.header["nu"]) if "nu" in table.header else None
    return PressureSeries(table.data[:, 0], table.data[:, 1], U, nu)


def parse_ustar_table(source: Source) -> tuple[np.ndarray, np.ndarray]:
    table = read_columns(source)
    if table.columns is not None and table.columns != ("x", "u_star"):
        raise SimilarityError(f"u_star table must have columns x,u_star, got {','.join(table.columns)}")
    x, us = table.data[:, 0], table.data[:, 1]
    if x.size == 0:
        raise SimilarityError("empty u_star table")
    if np.any(np.diff(x) <= 0):
        raise SimilarityError("u_star table x must be strictly increasing")
    if np.any(us <= 0):
        raise SimilarityError("u_star values must be positive")
    return x, us
