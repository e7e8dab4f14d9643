import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chevron.errors import AnalysisError, ProfileError
from chevron.profiles import (DimensionlessProfile, ProfileFormat, RawProfile, StationMeta,
                              WindowConfig, fit_window, iter_manifest, nondimensionalize,
                              parse_profile, serialize_profile)

from conftest import make_profile

RAW_HEADER = """# station_id = M30-1
# U = 30.0
# u_star = 1.0
# nu = 1.5e-5
# x = 1.2
# re_theta = 6430
# gradient_sign = adverse
# columns = y,u
"""


def raw_text(rows):
    return RAW_HEADER + "".join(f"{y}, {u}\n" for y, u in rows)


ROWS = [(0.0015 * (i + 1), 10.0 + i) for i in range(8)]


def test_parse_raw_verbatim():
    p = parse_profile(io.BytesIO(raw_text(ROWS).encode()))
    assert isinstance(p, RawProfile)
    assert p.samples[0] == (0.0015, 10.0)
    assert p.meta.u_star == 1.0 and p.meta.nu == 1.5e-5 and p.meta.U == 30.0
    assert p.meta.gradient_sign == "adverse"
    assert p.meta.station_id == "M30-1"


def test_duplicate_y_rejected():
    rows = list(ROWS)
    rows[3] = rows[2]
    with pytest.raises(ProfileError, match="non-monotone wall distance"):
        parse_profile(io.BytesIO(raw_text(rows).encode()))


def test_dimensionless_carries_re_theta():
    text = "# re_theta = 6430\n# columns = eta, phi\n" + "".join(
        f"{30 * 1.5 ** i} {10 + i}\n" for i in range(10))
    p = parse_profile(io.BytesIO(text.encode()))
    assert isinstance(p, DimensionlessProfile)
    assert p.meta.re_theta == 6430


@pytest.mark.parametrize("drop", ["u_star", "nu", "U"])
def test_raw_requires_scales(drop):
    text = "".join(l + "\n" for l in raw_text(ROWS).splitlines() if not l.startswith(f"# {drop} "))
    with pytest.raises(ProfileError, match=drop):
        parse_profile(io.BytesIO(text.encode()))


def test_non_numeric_reports_line_number():
    text = raw_text(ROWS).replace("0.003, 11.0", "0.003, abc")
    lineno = text.splitlines().index("0.003, abc") + 1
    with pytest.raises(ProfileError, match=rf"line {lineno}: non-numeric value 'abc'"):
        parse_profile(io.BytesIO(text.encode()))


def test_too_few_samples():
    with pytest.raises(ProfileError, match="at least 8"):
        parse_profile(io.BytesIO(raw_text(ROWS[:7]).encode()))


def test_whitespace_comments_and_blank_lines():
    body = "".join(f"{y}\t{u}\n\n# a comment\n" for y, u in ROWS)
    p = parse_profile(RAW_HEADER + body)
    assert len(p) == 8


def test_missing_columns_header_needs_explicit_format():
    text = "".join(f"{30 * 1.5 ** i} {10 + i}\n" for i in range(10))
    with pytest.raises(ProfileError, match="columns"):
        parse_profile(text)
    assert isinstance(parse_profile(text, ProfileFormat.DIMENSIONLESS), DimensionlessProfile)


def test_extras_kept():
    text = "# truth_A = 8.5\n# free comment = no key\n" + raw_text(ROWS)
    p = parse_profile(text)
    assert p.extras == {"truth_A": "8.5"}


@pytest.mark.parametrize("y,u,u_star,nu,eta,phi", [
    (1.5e-5, 1.0, 1.0, 1.5e-5, 1.0, 1.0),
    (0.003, 12.0, 0.5, 1.5e-5, 100.0, 24.0),
    (math.e, math.e, 1.0, 1.0, math.e, math.e),
])
def test_nondimensionalize_examples(y, u, u_star, nu, eta, phi):
    ys = y * np.arange(1, 9)
    p = RawProfile(StationMeta(U=30.0, u_star=u_star, nu=nu), ys, np.full(8, u))
    d = nondimensionalize(p)
    assert d.eta[0] == pytest.approx(eta, rel=1e-15)
    assert d.phi[0] == pytest.approx(phi, rel=1e-15)
    assert d.meta == p.meta


@settings(max_examples=100)
@given(u_star=st.floats(0.05, 5), nu=st.floats(1e-6, 1e-4),
       y0=st.floats(1e-6, 1e-3), u0=st.floats(0.1, 50))
def test_nondimensionalize_round_trip(u_star, nu, y0, u0):
    y = y0 * 1.3 ** np.arange(10)
    u = u0 * (1 + 0.1 * np.arange(10))
    d = nondimensionalize(RawProfile(StationMeta(U=60.0, u_star=u_star, nu=nu), y, u))
    np.testing.assert_allclose(d.eta * nu / u_star, y, rtol=4e-16 * 4)
    np.testing.assert_allclose(d.phi * u_star, u, rtol=4e-16 * 4)


@settings(max_examples=50)
@given(st.lists(st.floats(0.1, 1e3), min_size=8, max_size=30),
       st.floats(1e-5, 10), st.sampled_from(["adverse", "favourable", "zero", "unknown"]))
def test_parse_serialize_parse_identity(steps, phi0, sign):
    eta = np.cumsum(steps)
    phi = phi0 + np.arange(eta.size) * 0.37
    p = DimensionlessProfile(StationMeta("s1", 1.25, 7.0, 0.3, 1.4e-5, 1616.0, sign), eta, phi,
                             {"truth_A": "8.1"})
    q = parse_profile(serialize_profile(p))
    assert q.meta == p.meta and q.extras == p.extras
    np.testing.assert_array_equal(q.eta, p.eta)
    np.testing.assert_array_equal(q.phi, p.phi)
    r = parse_profile(serialize_profile(q))
    assert serialize_profile(r) == serialize_profile(p)


def test_raw_serialize_round_trip():
    p = parse_profile(raw_text(ROWS))
    q = parse_profile(serialize_profile(p))
    assert q.meta == p.meta
    np.testing.assert_array_equal(q.y, p.y)
    np.testing.assert_array_equal(q.u, p.u)


def test_profiles_are_immutable():
    p = make_profile(np.arange(1, 11), np.arange(1, 11))
    with pytest.raises(ValueError):
        p.eta[0] = 5.0


def test_meta_validation():
    with pytest.raises(ProfileError):
        StationMeta(u_star=-1.0)
    with pytest.raises(ProfileError):
        StationMeta(gradient_sign="sideways")
    assert StationMeta(gradient_sign="favorable").gradient_sign == "favourable"


# -- fit window ---------------------------------------------------------------

def test_window_starts_at_eta_min():
    eta = np.logspace(np.log10(5), 4, 50)
    p = make_profile(eta, 8 * eta ** 0.15)
    start, stop = fit_window(p)
    assert eta[start] >= 30 and eta[start - 1] < 30
    assert stop == 50


def test_window_rejects_sublayer_only_profile():
    eta = np.linspace(1, 29, 20)
    with pytest.raises(AnalysisError, match="insufficient intermediate region"):
        fit_window(make_profile(eta, eta))


def test_window_excludes_plateau():
    u_star, U = 1.0, 25.0
    eta = np.logspace(1.5, 4.5, 40)
    phi = np.minimum(8 * eta ** 0.15, 1e9)
    phi[-10:] = U / u_star
    phi[:-10] = np.minimum(phi[:-10], 0.9 * U)
    p = make_profile(eta, phi, U=U, u_star=u_star)
    start, stop = fit_window(p)
    assert stop == 30
    assert np.all(p.phi[start:stop] <= 0.99 * U)


def test_window_outer_cut_skipped_without_scales():
    eta = np.logspace(1.5, 4.5, 40)
    p = make_profile(eta, np.full(40, 25.0))
    assert fit_window(p) == (0, 40)


@settings(max_examples=100)
@given(st.floats(1, 200), st.floats(0.5, 1.0), st.integers(0, 2**32 - 1))
def test_window_is_contiguous_subrange(eta_min, frac, seed):
    rng = np.random.default_rng(seed)
    eta = np.sort(rng.uniform(1, 1e4, 40)) + np.arange(40) * 1e-3
    phi = rng.uniform(5, 30, 40)
    p = make_profile(eta, phi, U=30.0, u_star=1.0)
    try:
        start, stop = fit_window(p, WindowConfig(eta_min, frac))
    except AnalysisError:
        return
    assert 0 <= start < stop <= len(p)
    assert stop - start >= 6
    assert np.all(p.eta[start:stop] >= eta_min)
    assert np.all(p.phi[start:stop] <= frac * 30.0)


def test_manifest_paths(tmp_path):
    m = tmp_path / "manifest.txt"
    m.write_text("# stations\na.prof\n\n/abs/b.prof  # trailing\n")
    assert list(iter_manifest(m)) == [tmp_path / "a.prof", __import__("pathlib").Path("/abs/b.prof")]
