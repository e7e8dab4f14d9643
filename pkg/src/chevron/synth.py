"""Forward model: synthetic chevron profiles with known parameters.

The inner law follows from ``ln_re_lambda``; the outer prefactor is fixed by
continuity at the vertex, ``B = A * break_eta**(alpha - beta)``.  Noise is
multiplicative lognormal, ``phi *= exp(sigma * g)``.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from chevron.errors import InputError
from chevron.profiles import DimensionlessProfile, StationMeta, serialize_profile
from chevron.similarity import wall_law_from_re


class SynthError(InputError):
    pass


@dataclass(frozen=True)
class SyntheticSpec:
    ln_re_lambda: float
    beta: float
    break_eta: float
    eta_range: tuple[float, float] = (30.0, 30000.0)
    n_points: int = 40
    noise_sigma: float = 0.0
    seed: int = 0
    spacing: str = "log-uniform"
    station_id: str = ""
    x: float | None = None
    re_theta: float | None = None
    gradient_sign: str = "unknown"

    def __post_init__(self):
        lo, hi = (float(v) for v in self.eta_range)
        object.__setattr__(self, "eta_range", (lo, hi))
        for name in ("ln_re_lambda", "beta", "break_eta", "noise_sigma"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not 0 < lo < self.break_eta < hi:
            raise SynthError("need 0 < eta_range min < break_eta < eta_range max")
        if self.n_points < 10:
            raise SynthError("n_points must be at least 10")
        if self.noise_sigma < 0:
            raise SynthError("noise_sigma must be non-negative")
        if self.spacing != "log-uniform":
            raise SynthError(f"unsupported spacing {self.spacing!r}")
        if not self.ln_re_lambda > 0:
            raise SynthError("ln_re_lambda must be positive")

    @classmethod
    def from_dict(cls, d: dict) -> "SyntheticSpec":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise SynthError(f"unknown synthetic spec keys: {sorted(unknown)}")
        try:
            d = dict(d)
            if "eta_range" in d:
                d["eta_range"] = tuple(d["eta_range"])
            return cls(**d)
        except TypeError as exc:
            raise SynthError(str(exc)) from None


@dataclass(frozen=True)
class SyntheticTruth:
    A: float
    alpha: float
    B: float
    beta: float
    break_eta: float
    break_index: int  # first sample on the outer law

    def as_header(self) -> dict[str, str]:
        return {f"truth_{k}": repr(v) if isinstance(v, float) else str(v)
                for k, v in asdict(self).items()}

    @classmethod
    def from_header(cls, extras: dict[str, str]) -> "SyntheticTruth":
        try:
            return cls(*(float(extras[f"truth_{k}"]) for k in ("A", "alpha", "B", "beta", "break_eta")),
                       break_index=int(extras["truth_break_index"]))
        except KeyError as exc:
            raise SynthError(f"profile has no truth header {exc}") from None


def truth_for(spec: SyntheticSpec) -> tuple[float, float, float]:
    wl = wall_law_from_re(spec.ln_re_lambda)
    B = wl.A * spec.break_eta ** (wl.alpha - spec.beta)
    return wl.A, wl.alpha, B


def generate(spec: SyntheticSpec, rng: np.random.Generator | None = None
             ) -> tuple[DimensionlessProfile, SyntheticTruth]:
    """Sample a profile from ``spec``; ``rng`` defaults to one seeded by ``spec.seed``."""
    A, alpha, B = truth_for(spec)
    lo, hi = spec.eta_range
    eta = np.logspace(np.log10(lo), np.log10(hi), spec.n_points)
    eta[0], eta[-1] = lo, hi
    inner = eta <= spec.break_eta
    phi = np.where(inner, A * eta ** alpha, B * eta ** spec.beta)
    if spec.noise_sigma > 0:
        rng = rng if rng is not None else np.random.default_rng(spec.seed)
        phi = phi * np.exp(spec.noise_sigma * rng.standard_normal(spec.n_points))
    truth = SyntheticTruth(A, alpha, B, spec.beta, spec.break_eta, int(inner.sum()))
    meta = StationMeta(station_id=spec.station_id, x=spec.x, re_theta=spec.re_theta,
                       gradient_sign=spec.gradient_sign)
    return DimensionlessProfile(meta, eta, phi, truth.as_header()), truth


def load_specs(path: str | Path) -> list[SyntheticSpec]:
    """Read a JSON spec file: one spec object, or ``{"seed": s, "stations": [...]}``.

    Batch stations without their own seed get child seeds spawned from ``seed``.
    """
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SynthError(f"invalid JSON in {path}: {exc}") from None
    if isinstance(doc, dict) and "stations" in doc:
        base = doc.get("seed", 0)
        stations = doc["stations"]
        children = np.random.SeedSequence(base).spawn(len(stations))
        specs = []
        for i, (st, ss) in enumerate(zip(stations, children)):
            st = dict(st)
            st.setdefault("seed", int(ss.generate_state(1)[0]))
            st.setdefault("station_id", f"S{i + 1:02d}")
            specs.append(SyntheticSpec.from_dict(st))
        return specs
    if isinstance(doc, dict):
        return [SyntheticSpec.from_dict(doc)]
    raise SynthError("synthetic spec must be a JSON object")


def write_batch(specs: list[SyntheticSpec], outdir: str | Path) -> tuple[list[Path], list[SyntheticTruth]]:
    """Write one profile per spec plus ``manifest.txt`` (when more than one)."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths, truths = [], []
    for i, spec in enumerate(specs):
        profile, truth = generate(spec)
        name = f"{spec.station_id or f'station_{i + 1:02d}'}.prof"
        path = outdir / name
        path.write_text(serialize_profile(profile), encoding="utf-8")
        paths.append(path)
        truths.append(truth)
    if len(specs) > 1:
        (outdir / "manifest.txt").write_text(
            "# synthetic stations\n" + "".join(f"{p.name}\n" for p in paths), encoding="utf-8")
    return paths, truths
