import io
import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from chevron.similarity import (PressureSeries, SimilarityError, WallLawParams, consistency_pct,
                                invert_wall_law, moving_average, parse_pressure_series,
                                parse_ustar_table, pressure_gradient, similarity_parameter,
                                wall_law_from_re)


def test_wall_law_from_re_examples():
    w = wall_law_from_re(10.48)
    assert w.A == pytest.approx(10.48 / math.sqrt(3) + 2.5, rel=1e-15)
    assert w.A == pytest.approx(8.5506, abs=1e-4)
    assert w.alpha == pytest.approx(0.14313, abs=1e-5)
    assert wall_law_from_re(1.5).alpha == 1.0
    # published station x=1.80, U=10 m/s: A=8.30, alpha=0.150
    w = wall_law_from_re(10.04)
    assert round(w.A, 2) == 8.30 and round(w.alpha, 3) == 0.149
    assert w.alpha == pytest.approx(0.150, abs=1e-3)


@pytest.mark.parametrize("bad", [0.0, -1.0])
def test_wall_law_rejects_non_positive(bad):
    with pytest.raises(SimilarityError):
        wall_law_from_re(bad)


def test_invert_examples():
    r = invert_wall_law(WallLawParams(8.53, 0.143))
    assert r.ln_re1 == pytest.approx(10.444, abs=1e-3)
    assert r.ln_re2 == pytest.approx(10.490, abs=1e-3)
    assert r.ln_re_lambda == pytest.approx(10.47, abs=0.01)
    assert abs(r.ln_re1 - 10.44) <= 0.04 and abs(r.ln_re2 - 10.51) <= 0.04
    exact = invert_wall_law(WallLawParams(2.5 + math.sqrt(3), 1.5))
    assert exact.ln_re1 == pytest.approx(3.0, rel=1e-15) and exact.ln_re2 == 1.0
    r = invert_wall_law(WallLawParams(8.41, 0.145))
    assert r.ln_re1 == pytest.approx(10.24, abs=0.01)
    assert r.ln_re2 == pytest.approx(10.34, abs=0.01)
    assert r.delta_pct == pytest.approx(1.0, abs=0.1)


def test_invert_identities():
    r = invert_wall_law(WallLawParams(8.2, 0.151))
    assert r.ln_re1 == math.sqrt(3) * (8.2 - 2.5)
    assert r.ln_re2 == 3 / (2 * 0.151)
    assert r.ln_re_lambda == (r.ln_re1 + r.ln_re2) / 2
    assert r.delta_pct == 100 * 2 * abs(r.ln_re1 - r.ln_re2) / (r.ln_re1 + r.ln_re2)


@pytest.mark.parametrize("A,alpha,msg", [(2.5, 0.14, "logarithmic floor"), (2.0, 0.14, "floor"),
                                         (8.0, 0.0, "alpha"), (8.0, -0.1, "alpha")])
def test_invert_errors(A, alpha, msg):
    with pytest.raises(SimilarityError, match=msg):
        invert_wall_law(WallLawParams(A, alpha))


@settings(max_examples=200)
@given(st.floats(0.01, 50))
def test_round_trip(r):
    s = invert_wall_law(wall_law_from_re(r))
    assert s.ln_re1 == pytest.approx(r, abs=1e-12 * max(1, r))
    assert s.ln_re2 == pytest.approx(r, abs=1e-12 * max(1, r))
    assert s.delta_pct == pytest.approx(0.0, abs=1e-10)


@settings(max_examples=100)
@given(st.floats(0.5, 40), st.floats(0.01, 5))
def test_monotonicity(r, dr):
    a, b = wall_law_from_re(r), wall_law_from_re(r + dr)
    assert b.A > a.A and b.alpha < a.alpha


@settings(max_examples=100)
@given(st.floats(0.1, 30), st.floats(0.1, 30))
def test_delta_symmetric(a, b):
    assert consistency_pct(a, b) == consistency_pct(b, a)


# -- pressure gradient --------------------------------------------------------

def test_constant_cp_zero_gradient():
    g = pressure_gradient(PressureSeries([0.2, 0.5, 1.1, 2.0], [0.3] * 4))
    assert all(d == 0 for _, d in g)


def test_linear_cp_exact():
    g = pressure_gradient(PressureSeries([1.0, 2.0, 3.0], [0.1, 0.2, 0.3]))
    np.testing.assert_allclose([d for _, d in g], 0.1, rtol=1e-14)


def test_quadratic_exact_nonuniform():
    g = pressure_gradient(PressureSeries([1.0, 2.0, 4.0], [1.0, 4.0, 16.0]))
    np.testing.assert_allclose([d for _, d in g], [2.0, 4.0, 8.0], rtol=1e-13)


def sympy_stencil(nodes, at):
    """Weights of the derivative of the interpolating quadratic through nodes, at ``at``."""
    t = sympy.Symbol("t")
    ws = []
    for j, xj in enumerate(nodes):
        lj = sympy.Integer(1)
        for m, xm in enumerate(nodes):
            if m != j:
                lj *= (t - xm) / (xj - xm)
        ws.append(sympy.diff(lj, t).subs(t, at))
    return [float(w) for w in ws]


def test_scheme_weights_match_symbolic_derivation():
    x = [sympy.Rational(1), sympy.Rational(5, 2), sympy.Rational(3), sympy.Rational(9, 2), sympy.Rational(7)]
    xf = np.array([float(v) for v in x])
    rng = np.random.default_rng(0)
    cp = rng.normal(size=5)
    got = np.array([d for _, d in pressure_gradient(PressureSeries(xf, cp))])
    expect = [np.dot(sympy_stencil(x[0:3], x[0]), cp[0:3])]
    expect += [np.dot(sympy_stencil(x[i - 1:i + 2], x[i]), cp[i - 1:i + 2]) for i in range(1, 4)]
    expect += [np.dot(sympy_stencil(x[2:5], x[4]), cp[2:5])]
    np.testing.assert_allclose(got, expect, rtol=1e-12)
    np.testing.assert_allclose(got, np.gradient(cp, xf, edge_order=2), rtol=1e-12)


@settings(max_examples=100)
@given(st.lists(st.floats(0.05, 2.0), min_size=2, max_size=12),
       st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
def test_quadratic_exact_random_grids(steps, a, b, c):
    x = np.cumsum(steps)
    cp = a + b * x + c * x ** 2
    g = np.array([d for _, d in pressure_gradient(PressureSeries(x, cp))])
    if x.size >= 3:
        np.testing.assert_allclose(g, b + 2 * c * x, rtol=1e-6, atol=1e-6 * (1 + abs(b) + abs(c)) * x.max() ** 2 / min(steps))


def test_two_station_series():
    g = pressure_gradient(PressureSeries([1.0, 3.0], [0.0, 0.4]))
    assert [d for _, d in g] == [0.2, 0.2]


def test_duplicate_x_rejected():
    with pytest.raises(SimilarityError, match="duplicate"):
        PressureSeries([1.0, 1.0, 2.0], [0, 0, 0])
    with pytest.raises(SimilarityError):
        PressureSeries([1.0], [0.0])


def test_smoothing_optional():
    x = np.linspace(0, 1, 9)
    cp = x.copy()
    cp[4] += 0.1
    plain = pressure_gradient(PressureSeries(x, cp))
    smooth = pressure_gradient(PressureSeries(x, cp), smooth=3)
    assert plain != smooth
    np.testing.assert_allclose(moving_average(np.arange(5.0), 3), [0, 1, 2, 3, 4])
    with pytest.raises(SimilarityError):
        moving_average(np.arange(5.0), 2)


# -- P ------------------------------------------------------------------------

def test_p_examples():
    assert similarity_parameter(0.0, 30.0, 1.0, 1.5e-5) == 0.0
    assert similarity_parameter(0.01, 30.0, 1.0, 1.5e-5) == pytest.approx(6.75e-5, rel=1e-13)
    assert similarity_parameter(-0.01, 10.0, 0.4, 1.5e-5) < 0


def test_p_rejects_bad_scales():
    with pytest.raises(SimilarityError):
        similarity_parameter(0.1, 10.0, 0.0, 1.5e-5)


@settings(max_examples=100)
@given(st.floats(-1, 1), st.floats(1, 50), st.floats(0.1, 3), st.floats(1e-6, 1e-4),
       st.floats(0.1, 10))
def test_p_scaling(g, U, us, nu, k):
    P = similarity_parameter(g, U, us, nu)
    assert similarity_parameter(k * g, U, us, nu) == pytest.approx(k * P, rel=1e-12, abs=1e-300)
    assert similarity_parameter(g, U, us, k * nu) == pytest.approx(k * P, rel=1e-12, abs=1e-300)
    assert similarity_parameter(g, U, k * us, nu) == pytest.approx(P / k ** 3, rel=1e-12, abs=1e-300)


@settings(max_examples=100)
@given(st.floats(-1, 1), st.floats(1, 50), st.floats(0.1, 3), st.floats(1e-6, 1e-4),
       st.floats(1e-3, 1e3), st.floats(1e-3, 1e3))
def test_p_dimensionless(g, U, us, nu, lam, tau):
    # length -> lam * length, time -> tau * time
    P = similarity_parameter(g, U, us, nu)
    P2 = similarity_parameter(g / lam, U * lam / tau, us * lam / tau, nu * lam ** 2 / tau)
    assert P2 == pytest.approx(P, rel=1e-10, abs=1e-300)


def test_parse_pressure_files():
    s = parse_pressure_series(io.BytesIO(b"# U = 30\n# nu = 1.5e-5\n# columns = x,cp\n1.2 0\n1.8 0.1\n2.6 0.3\n"))
    assert s.U == 30.0 and s.nu == 1.5e-5 and s.x.tolist() == [1.2, 1.8, 2.6]
    x, us = parse_ustar_table("# columns = x,u_star\n1.2, 1.1\n2.6, 0.9\n")
    assert us.tolist() == [1.1, 0.9]
    with pytest.raises(SimilarityError):
        parse_pressure_series("# columns = y,u\n1 2\n3 4\n")
