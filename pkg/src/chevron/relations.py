"""Cross-station relations: B against 1/beta at nearly constant Re_L, and
beta(P), B(P) cross-sections."""
from __future__ import annotations

import json
import logging
import statistics
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from chevron.errors import InputError
from chevron.fitting import ChevronFit
from chevron.profiles import StationMeta
from chevron.similarity import PressureParameter, SimilarityResult

log = logging.getLogger(__name__)

# Published B(1/beta) lines, keyed by gradient sign: (slope, intercept).
REFERENCE_LINES = {"adverse": (1.75, -2.80), "favourable": (1.0, 1.43)}


class RelationError(InputError):
    pass


@dataclass(frozen=True)
class StationRecord:
    meta: StationMeta
    fit: ChevronFit
    sim: SimilarityResult
    P: PressureParameter | None = None
    flags: tuple[str, ...] = field(default_factory=tuple)

    @property
    def station_id(self) -> str:
        return self.meta.station_id

    def to_dict(self) -> dict:
        return {
            "meta": self.meta.to_dict(),
            "fit": self.fit.to_dict(),
            "sim": self.sim.to_dict(),
            "P": self.P.to_dict() if self.P is not None else None,
            "flags": list(self.flags),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "StationRecord":
        try:
            return cls(
                meta=StationMeta.from_dict(d["meta"]),
                fit=ChevronFit.from_dict(d["fit"]),
                sim=SimilarityResult.from_dict(d["sim"]),
                P=PressureParameter.from_dict(d["P"]) if d.get("P") else None,
                flags=tuple(d.get("flags", ())),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise RelationError(f"malformed station record: {exc}") from None


def dump_records(records: list[StationRecord], path: str | Path, config: dict | None = None) -> None:
    doc = {"config": config or {}, "records": [r.to_dict() for r in records]}
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def load_records(path: str | Path) -> list[StationRecord]:
    """Load records from a JSON list or a ``{"records": [...]}`` document."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise RelationError(f"invalid JSON in {path}: {exc}") from None
    items = doc.get("records") if isinstance(doc, dict) else doc
    if not isinstance(items, list):
        raise RelationError(f"{path}: expected a list of station records")
    return [StationRecord.from_dict(d) for d in items]


def select_constant_re_band(records: list[StationRecord], tol: float = 0.3) -> list[StationRecord]:
    """Stations whose ln Re_L lies within ``tol`` of the batch median.

    If nothing falls inside the band around the median (possible for an even
    count with a wide gap) the lower median is used as centre instead.
    """
    if not records:
        raise RelationError("no records to select from")
    values = [r.sim.ln_re_lambda for r in records]
    for centre in (statistics.median(values), statistics.median_low(values)):
        chosen = [r for r, v in zip(records, values) if abs(v - centre) <= tol]
        if chosen:
            log.info("ln Re_L band %.4f +/- %.4f keeps %d of %d stations",
                     centre, tol, len(chosen), len(records))
            return chosen
    raise RelationError("empty ln Re_L band")  # unreachable: median_low is a member


def gradient_sign_of(records: list[StationRecord]) -> str:
    """Common gradient sign; 'zero'/'unknown' stations join either series."""
    signs = {r.meta.gradient_sign for r in records} - {"zero", "unknown"}
    if len(signs) > 1:
        raise RelationError("separate adverse and favourable series")
    if signs:
        return signs.pop()
    return "zero" if any(r.meta.gradient_sign == "zero" for r in records) else "unknown"


@dataclass(frozen=True)
class RelationFit:
    slope: float
    intercept: float
    points: list[tuple[float, float, str]]  # (1/beta, B, station_id)
    residuals: list[float]
    ln_re_lambda_band: tuple[float, float]
    gradient_sign: str = "unknown"

    def predict(self, inv_beta) -> np.ndarray:
        return self.slope * np.asarray(inv_beta, dtype=float) + self.intercept

    def to_dict(self) -> dict:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "gradient_sign": self.gradient_sign,
            "ln_re_lambda_band": list(self.ln_re_lambda_band),
            "points": [{"station_id": s, "inv_beta": x, "B": y, "residual": e}
                       for (x, y, s), e in zip(self.points, self.residuals)],
        }


def fit_b_vs_inv_beta(records: list[StationRecord]) -> RelationFit:
    """OLS line ``B = slope / beta + intercept`` over stations with a second layer."""
    sign = gradient_sign_of(records)
    valid = [r for r in records if r.fit.region2_present and r.fit.segment2 is not None]
    if len(valid) < 2:
        raise RelationError(f"need at least 2 stations with a second layer, got {len(valid)}")
    x = np.array([1.0 / r.fit.segment2.exponent for r in valid])
    y = np.array([r.fit.segment2.coeff for r in valid])
    dx = x - x.mean()
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise RelationError("all beta equal: zero abscissa variance")
    slope = float(dx @ (y - y.mean())) / sxx
    intercept = float(y.mean() - slope * x.mean())
    resid = y - (slope * x + intercept)
    lnre = [r.sim.ln_re_lambda for r in valid]
    return RelationFit(slope, intercept,
                       [(float(a), float(b), r.station_id) for a, b, r in zip(x, y, valid)],
                       resid.tolist(), (min(lnre), max(lnre)), sign)


def reference_deviation(fit: RelationFit, slope: float, intercept: float) -> float:
    """Largest |B_fit - B_ref| over the fit's own 1/beta abscissae."""
    x = np.array([p[0] for p in fit.points])
    return float(np.max(np.abs(fit.predict(x) - (slope * x + intercept))))


@dataclass(frozen=True)
class CrossSection:
    beta_vs_P: list[tuple[float, float, str]]
    B_vs_P: list[tuple[float, float, str]]


def cross_section(records: list[StationRecord]) -> CrossSection:
    """(P, beta) and (P, B) point sets sorted by P, for stations with both."""
    usable = [r for r in records
              if r.P is not None and r.fit.region2_present and r.fit.segment2 is not None]
    if not usable:
        log.warning("no stations carry both P and a second layer; cross-section is empty")
        return CrossSection([], [])
    usable.sort(key=lambda r: r.P.P)
    return CrossSection(
        [(r.P.P, r.fit.segment2.exponent, r.station_id) for r in usable],
        [(r.P.P, r.fit.segment2.coeff, r.station_id) for r in usable],
    )
