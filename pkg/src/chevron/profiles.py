"""Velocity-profile ingestion, wall-unit scaling and fit-window selection.

Profile files are UTF-8 and line oriented::

    # station_id = M30-1
    # U = 30.0
    # u_star = 1.08
    # nu = 1.5e-5
    # columns = y,u
    0.00012, 9.81
    0.00015  10.2

Header lines have the form ``# key = value``; any other ``#`` line is a
comment.  Unknown header keys (for example ``truth_*`` written by the
synthetic generator) are kept verbatim in ``extras``.
"""
from __future__ import annotations

import enum
import io
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Union

import numpy as np

from chevron.errors import AnalysisError, ProfileError

MIN_SAMPLES = 8
MIN_WINDOW = 6

GRADIENT_SIGNS = ("adverse", "favourable", "zero", "unknown")
_SIGN_ALIASES = {"favorable": "favourable", "apg": "adverse", "fpg": "favourable", "zpg": "zero"}

HEADER_KEYS = ("station_id", "x", "U", "u_star", "nu", "re_theta", "gradient_sign", "columns")
_FLOAT_KEYS = ("x", "U", "u_star", "nu", "re_theta")

_HEADER_RE = re.compile(r"^#\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*?)\s*$")
_SPLIT_RE = re.compile(r"[,\s]+")

Source = Union[IO[bytes], IO[str], bytes, str, Path]


class ProfileFormat(enum.Enum):
    AUTO = "auto"
    RAW = "y,u"
    DIMENSIONLESS = "eta,phi"


def normalize_gradient_sign(value: str | None) -> str:
    if value is None:
        return "unknown"
    v = value.strip().lower()
    v = _SIGN_ALIASES.get(v, v)
    if v not in GRADIENT_SIGNS:
        raise ProfileError(f"gradient_sign must be one of {GRADIENT_SIGNS}, got {value!r}")
    return v


@dataclass(frozen=True)
class StationMeta:
    """Per-station metadata.  Dimensional fields are SI; missing ones are None."""

    station_id: str = ""
    x: float | None = None
    U: float | None = None
    u_star: float | None = None
    nu: float | None = None
    re_theta: float | None = None
    gradient_sign: str = "unknown"

    def __post_init__(self):
        for name in ("U", "u_star", "nu", "re_theta"):
            v = getattr(self, name)
            if v is not None and not (v > 0 and math.isfinite(v)):
                raise ProfileError(f"{name} must be positive, got {v!r}")
        object.__setattr__(self, "gradient_sign", normalize_gradient_sign(self.gradient_sign))

    def to_dict(self) -> dict:
        return {
            "station_id": self.station_id,
            "x": self.x,
            "U": self.U,
            "u_star": self.u_star,
            "nu": self.nu,
            "re_theta": self.re_theta,
            "gradient_sign": self.gradient_sign,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "StationMeta":
        return cls(**{k: d.get(k) for k in ("x", "U", "u_star", "nu", "re_theta")},
                   station_id=d.get("station_id") or "",
                   gradient_sign=d.get("gradient_sign") or "unknown")


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


def _check_samples(first: np.ndarray, second: np.ndarray, first_name: str, second_name: str,
                   monotone_msg: str) -> None:
    if first.ndim != 1 or first.shape != second.shape:
        raise ProfileError(f"{first_name} and {second_name} must be 1-D arrays of equal length")
    if first.size < MIN_SAMPLES:
        raise ProfileError(f"profile has {first.size} samples, at least {MIN_SAMPLES} required")
    if not (np.all(np.isfinite(first)) and np.all(np.isfinite(second))):
        raise ProfileError("profile contains non-finite values")
    if np.any(first <= 0):
        raise ProfileError(f"all {first_name} must be positive")
    if np.any(np.diff(first) <= 0):
        raise ProfileError(monotone_msg)
    if np.any(second <= 0):
        raise ProfileError(f"all {second_name} must be positive")


@dataclass(frozen=True)
class RawProfile:
    """Dimensional profile: wall distance ``y`` [m] and mean velocity ``u`` [m/s]."""

    meta: StationMeta
    y: np.ndarray
    u: np.ndarray
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "y", _frozen(self.y))
        object.__setattr__(self, "u", _frozen(self.u))
        _check_samples(self.y, self.u, "y", "u", "non-monotone wall distance")
        for name in ("U", "u_star", "nu"):
            if getattr(self.meta, name) is None:
                raise ProfileError(f"raw profile requires {name} in its metadata")

    def __len__(self):
        return self.y.size

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.y.tolist(), self.u.tolist()))


@dataclass(frozen=True)
class DimensionlessProfile:
    """Profile in wall units: ``eta = u* y / nu`` and ``phi = u / u*``."""

    meta: StationMeta
    eta: np.ndarray
    phi: np.ndarray
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "eta", _frozen(self.eta))
        object.__setattr__(self, "phi", _frozen(self.phi))
        _check_samples(self.eta, self.phi, "eta", "phi", "non-monotone eta")

    def __len__(self):
        return self.eta.size

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.eta.tolist(), self.phi.tolist()))

    @property
    def phi_external(self) -> float | None:
        """Free-stream velocity in wall units, U/u*, when both are known."""
        if self.meta.U is None or self.meta.u_star is None:
            return None
        return self.meta.U / self.meta.u_star


Profile = Union[RawProfile, DimensionlessProfile]


@dataclass(frozen=True)
class WindowConfig:
    eta_min: float = 30.0
    outer_fraction: float = 0.99

    def __post_init__(self):
        if not self.eta_min > 0 or not self.outer_fraction > 0:
            raise ValueError("window thresholds must be positive")


# -- text tables -------------------------------------------------------------

@dataclass
class ColumnTable:
    """Result of reading a header + two-column data file."""

    header: dict[str, str]
    extras: dict[str, str]
    columns: tuple[str, str] | None
    data: np.ndarray  # shape (n, 2)


def _read_text(source: Source) -> str:
    if isinstance(source, Path):
        return source.read_text(encoding="utf-8")
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    content = source.read()
    if isinstance(content, bytes):
        content = content.decode("utf-8")
    return content


def read_columns(source: Source) -> ColumnTable:
    """Parse the shared header/data-line file convention.

    ``source`` may be a binary or text stream, raw bytes, text, or a Path.
    Errors on malformed data lines carry the 1-based line number.
    """
    header: dict[str, str] = {}
    extras: dict[str, str] = {}
    rows: list[tuple[float, float]] = []
    for lineno, line in enumerate(_read_text(source).splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            m = _HEADER_RE.match(stripped)
            if m:
                key, value = m.groups()
                (header if key in HEADER_KEYS else extras)[key] = value
            continue
        tokens = [t for t in _SPLIT_RE.split(stripped) if t]
        if len(tokens) != 2:
            raise ProfileError(f"line {lineno}: expected 2 values, found {len(tokens)}")
        try:
            rows.append((float(tokens[0]), float(tokens[1])))
        except ValueError:
            bad = next(t for t in tokens if not _is_float(t))
            raise ProfileError(f"line {lineno}: non-numeric value {bad!r}") from None
    columns = None
    if "columns" in header:
        names = tuple(c.strip() for c in header["columns"].split(","))
        if len(names) != 2:
            raise ProfileError(f"columns header must name two columns, got {header['columns']!r}")
        columns = names
    data = np.array(rows, dtype=float).reshape(-1, 2)
    return ColumnTable(header, extras, columns, data)


def _is_float(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def meta_from_header(header: dict[str, str]) -> StationMeta:
    values: dict = {}
    for key in _FLOAT_KEYS:
        if key in header:
            try:
                values[key] = float(header[key])
            except ValueError:
                raise ProfileError(f"header {key} is not a number: {header[key]!r}") from None
    return StationMeta(station_id=header.get("station_id", ""),
                       gradient_sign=header.get("gradient_sign", "unknown"), **values)


def parse_profile(source: Source, fmt: ProfileFormat = ProfileFormat.AUTO) -> Profile:
    """Read a profile file into a :class:`RawProfile` or :class:`DimensionlessProfile`.

    With ``fmt=AUTO`` the ``columns`` header decides; a file without one is
    rejected, since ``y,u`` and ``eta,phi`` data are indistinguishable.
    """
    table = read_columns(source)
    if fmt is ProfileFormat.AUTO:
        if table.columns is None:
            raise ProfileError("missing 'columns' header (expected y,u or eta,phi)")
        try:
            fmt = ProfileFormat(",".join(table.columns))
        except ValueError:
            raise ProfileError(f"unsupported columns {','.join(table.columns)!r}") from None
    elif table.columns is not None and ",".join(table.columns) != fmt.value:
        raise ProfileError(f"columns header {','.join(table.columns)!r} contradicts format {fmt.value!r}")

    meta = meta_from_header(table.header)
    if fmt is ProfileFormat.RAW:
        missing = [k for k in ("u_star", "nu", "U") if getattr(meta, k) is None]
        if missing:
            raise ProfileError(f"malformed header: raw profile missing {', '.join(missing)}")
        return RawProfile(meta, table.data[:, 0], table.data[:, 1], dict(table.extras))
    return DimensionlessProfile(meta, table.data[:, 0], table.data[:, 1], dict(table.extras))


def read_profile(path: str | Path, fmt: ProfileFormat = ProfileFormat.AUTO) -> Profile:
    with open(path, "rb") as fh:
        return parse_profile(fh, fmt)


def format_header(meta: StationMeta, columns: str, extras: dict | None = None) -> list[str]:
    lines = []
    for key in HEADER_KEYS[:-1]:
        v = getattr(meta, key)
        if v is None or (key == "station_id" and v == ""):
            continue
        lines.append(f"# {key} = {v!r}" if isinstance(v, float) else f"# {key} = {v}")
    lines.append(f"# columns = {columns}")
    for key, v in (extras or {}).items():
        lines.append(f"# {key} = {v}")
    return lines


def serialize_profile(p: Profile) -> str:
    """Inverse of :func:`parse_profile`; floats are written with ``repr``."""
    if isinstance(p, RawProfile):
        cols, a, b = ProfileFormat.RAW.value, p.y, p.u
    else:
        cols, a, b = ProfileFormat.DIMENSIONLESS.value, p.eta, p.phi
    lines = format_header(p.meta, cols, p.extras)
    lines.extend(f"{float(s)!r}, {float(t)!r}" for s, t in zip(a, b))
    return "\n".join(lines) + "\n"


def write_profile(p: Profile, path: str | Path) -> None:
    Path(path).write_text(serialize_profile(p), encoding="utf-8")


def nondimensionalize(p: Profile) -> DimensionlessProfile:
    """Map (y, u) to wall units; dimensionless input is returned unchanged."""
    if isinstance(p, DimensionlessProfile):
        return p
    m = p.meta
    return DimensionlessProfile(m, m.u_star * p.y / m.nu, p.u / m.u_star, dict(p.extras))


def fit_window(p: DimensionlessProfile, cfg: WindowConfig = WindowConfig()) -> tuple[int, int]:
    """Half-open index range of the intermediate region.

    Starts at the first sample with ``eta >= cfg.eta_min`` and stops before
    the first subsequent sample with ``phi > outer_fraction * U/u*``.  The
    outer cut is skipped when U or u* is unknown.
    """
    start = int(np.searchsorted(p.eta, cfg.eta_min, side="left"))
    stop = len(p)
    phi_e = p.phi_external
    if phi_e is not None:
        above = np.flatnonzero(p.phi[start:] > cfg.outer_fraction * phi_e)
        if above.size:
            stop = start + int(above[0])
    if stop - start < MIN_WINDOW:
        raise AnalysisError(
            f"insufficient intermediate region: {max(stop - start, 0)} samples in window, "
            f"{MIN_WINDOW} required")
    return start, stop


def iter_manifest(path: str | Path) -> Iterable[Path]:
    """Profile paths listed in a manifest, resolved relative to the manifest."""
    path = Path(path)
    base = path.parent
    for line in path.read_text(encoding="utf-8").splitlines():
        entry = line.split("#", 1)[0].strip()
        if entry:
            p = Path(entry)
            yield p if p.is_absolute() else base / p
