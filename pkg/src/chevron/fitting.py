"""Two-segment power-law ("chevron") fitting in bilogarithmic coordinates.

Each segment is an ordinary least-squares line ``lg phi = c + k lg eta``,
i.e. the power law ``phi = 10**c * eta**k``.  The breakpoint is found by an
exhaustive scan over sample indices.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np

from chevron import kernels
from chevron.errors import AnalysisError
from chevron.profiles import DimensionlessProfile

FLAG_SMALL_WINDOW = "window too small for chevron"
FLAG_NO_IMPROVEMENT = "two-segment fit does not improve SSE enough"
FLAG_SLOPE_GAP = "segment exponents too close"
FLAG_INVERTED = "outer exponent below inner exponent"
FLAG_VERTEX = "vertex outside break interval"
FLAG_PARALLEL = "parallel segments"


@dataclass(frozen=True)
class SegmentFit:
    """One power-law segment.  ``sse``/``r2`` are in (lg eta, lg phi) space.

    ``index_range`` is half-open.  Records rebuilt from published tables have
    no samples, so ``index_range``, ``sse`` and ``r2`` may be None.
    """

    coeff: float
    exponent: float
    index_range: tuple[int, int] | None = None
    sse: float | None = None
    r2: float | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["index_range"] = list(self.index_range) if self.index_range is not None else None
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SegmentFit":
        ir = d.get("index_range")
        return cls(coeff=float(d["coeff"]), exponent=float(d["exponent"]),
                   index_range=tuple(ir) if ir is not None else None,
                   sse=d.get("sse"), r2=d.get("r2"))

    def predict(self, eta) -> np.ndarray:
        return self.coeff * np.asarray(eta, dtype=float) ** self.exponent


@dataclass(frozen=True)
class BreakConfig:
    min_points: int = 4
    min_improvement: float = 2.0
    min_slope_gap: float = 0.02
    allow_inverted: bool = True

    def __post_init__(self):
        if self.min_points < 3:
            raise ValueError("min_points must be at least 3")
        if not (self.min_improvement > 0 and self.min_slope_gap > 0):
            raise ValueError("break thresholds must be positive")


@dataclass(frozen=True)
class ChevronFit:
    segment1: SegmentFit
    segment2: SegmentFit | None = None
    break_index: int | None = None
    region2_present: bool = False
    total_sse: float | None = None
    single_sse: float | None = None
    flags: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "segment1": self.segment1.to_dict(),
            "segment2": self.segment2.to_dict() if self.segment2 is not None else None,
            "break_index": self.break_index,
            "region2_present": self.region2_present,
            "total_sse": self.total_sse,
            "single_sse": self.single_sse,
            "flags": list(self.flags),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ChevronFit":
        seg2 = d.get("segment2")
        return cls(
            segment1=SegmentFit.from_dict(d["segment1"]),
            segment2=SegmentFit.from_dict(seg2) if seg2 else None,
            break_index=d.get("break_index"),
            region2_present=bool(d.get("region2_present", False)),
            total_sse=d.get("total_sse"),
            single_sse=d.get("single_sse"),
            flags=tuple(d.get("flags", ())),
        )


def _log_samples(p: DimensionlessProfile, start: int, stop: int) -> tuple[np.ndarray, np.ndarray]:
    return np.log10(p.eta[start:stop]), np.log10(p.phi[start:stop])


def _ols(lx: np.ndarray, ly: np.ndarray) -> tuple[float, float, float, float]:
    mx, my = lx.mean(), ly.mean()
    dx, dy = lx - mx, ly - my
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise AnalysisError("zero variance abscissa")
    slope = float(dx @ dy) / sxx
    intercept = float(my - slope * mx)
    resid = ly - (intercept + slope * lx)
    sse = float(resid @ resid)
    sst = float(dy @ dy)
    r2 = 1.0 - sse / sst if sst > 0.0 else 1.0
    return slope, intercept, sse, r2


def fit_power_law(p: DimensionlessProfile, index_range: tuple[int, int]) -> SegmentFit:
    """Least-squares power law ``phi = coeff * eta**exponent`` over ``index_range``."""
    start, stop = int(index_range[0]), int(index_range[1])
    if not (0 <= start < stop <= len(p)) or stop - start < 3:
        raise AnalysisError(f"segment {start}:{stop} needs at least 3 samples inside the profile")
    slope, intercept, sse, r2 = _ols(*_log_samples(p, start, stop))
    return SegmentFit(10.0 ** intercept, slope, (start, stop), sse, r2)


def _vertex_in_interval(seg1: SegmentFit, seg2: SegmentFit, lx_all: np.ndarray, k: int) -> bool:
    lv = vertex_log_eta(seg1, seg2)
    if lv is None:
        return False
    lo = lx_all[k - 1] - (lx_all[k - 1] - lx_all[k - 2])
    hi = lx_all[k] + (lx_all[k + 1] - lx_all[k])
    return lo <= lv <= hi


def fit_chevron(p: DimensionlessProfile, window: tuple[int, int] | None = None,
                cfg: BreakConfig = BreakConfig(), backend: str | None = None) -> ChevronFit:
    """Fit a two-segment power law over ``window`` (default: whole profile).

    Every split leaving ``cfg.min_points`` samples per side is scored by total
    SSE; the lowest-index minimiser wins.  The second layer is reported absent
    when the best split fails to reduce the single-line SSE by the factor
    ``cfg.min_improvement``, or when the two exponents differ by less than
    ``cfg.min_slope_gap``.
    """
    start, stop = window if window is not None else (0, len(p))
    single = fit_power_law(p, (start, stop))
    m = cfg.min_points
    if stop - start < 2 * m:
        return ChevronFit(single, total_sse=single.sse, single_sse=single.sse,
                          flags=(FLAG_SMALL_WINDOW,))

    lx, ly = _log_samples(p, start, stop)
    totals = kernels.scan_breaks(lx, ly, m, backend=backend)
    k = start + m + int(np.argmin(totals))
    seg1 = fit_power_law(p, (start, k))
    seg2 = fit_power_law(p, (k, stop))
    two_sse = seg1.sse + seg2.sse

    flags = []
    if single.sse < cfg.min_improvement * two_sse:
        flags.append(FLAG_NO_IMPROVEMENT)
    if abs(seg2.exponent - seg1.exponent) < cfg.min_slope_gap:
        flags.append(FLAG_SLOPE_GAP)
    if not cfg.allow_inverted and seg2.exponent < seg1.exponent:
        flags.append(FLAG_INVERTED)
    if flags:
        return ChevronFit(single, total_sse=single.sse, single_sse=single.sse, flags=tuple(flags))

    if not _vertex_in_interval(seg1, seg2, np.log10(p.eta), k):
        flags.append(FLAG_VERTEX)
    return ChevronFit(seg1, seg2, break_index=k, region2_present=True, total_sse=two_sse,
                      single_sse=single.sse, flags=tuple(flags))


def vertex_log_eta(seg1: SegmentFit, seg2: SegmentFit) -> float | None:
    gap = seg2.exponent - seg1.exponent
    if abs(gap) < 1e-9:
        return None
    return (math.log10(seg1.coeff) - math.log10(seg2.coeff)) / gap


def break_eta(fit: ChevronFit) -> float | None:
    """Wall-unit location of the chevron vertex, where the two laws intersect.

    None when the second layer is absent or the segments are parallel (the
    latter also emits a warning).
    """
    if not fit.region2_present or fit.segment2 is None:
        return None
    lv = vertex_log_eta(fit.segment1, fit.segment2)
    if lv is None:
        warnings.warn(FLAG_PARALLEL, RuntimeWarning, stacklevel=2)
        return None
    return 10.0 ** lv
