import math
import time

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import optimize, special

from magnonbls.errors import (InvalidComponentError, NoInteriorMaximumError,
                              PolarizationMismatchError, RootNotFoundError)
from magnonbls.wgm import (SPEED_OF_LIGHT, Component, Orbit, Polarization, SphereGeometry,
                           WgmIndex, angular_momenta, birefringence_ratio, fsr,
                           geometric_birefringence, inner_outer_decompose, inner_outer_recompose,
                           peak_radius, resonance_size_parameter, solve_mode,
                           tm_equatorial_components, wgm_oam, wgm_spin, wgm_total_j)

CCW, CW = Orbit.CCW, Orbit.CW
TE, TM = Polarization.TE, Polarization.TM
NONE, INNER, OUTER = Component.NONE, Component.INNER, Component.OUTER

# Dense-scan oracle values (arbitrary precision, bisection), n = 2.19, l = 50, q = 1.
MIE_TE_L50 = 25.7763248612462838
MIE_TM_L50 = 26.1912634760591378


# --- angular momentum bookkeeping ---------------------------------------

@pytest.mark.parametrize("orbit,pol,comp,m,expected", [
    (CCW, TE, NONE, 10, 10),
    (CCW, TM, INNER, 10, 9),
    (CCW, TM, OUTER, 10, 11),
    (CW, TE, NONE, 10, -10),
    (CW, TM, INNER, 10, -9),
    (CW, TM, OUTER, 10, -11),
])
def test_wgm_oam_table(orbit, pol, comp, m, expected):
    assert wgm_oam(orbit, pol, comp, m) == expected


@pytest.mark.parametrize("orbit,pol,comp,expected", [
    (CCW, TM, INNER, 1), (CCW, TM, OUTER, -1), (CW, TM, INNER, -1), (CW, TM, OUTER, 1),
    (CCW, TE, NONE, 0), (CW, TE, NONE, 0),
])
def test_wgm_spin_table(orbit, pol, comp, expected):
    assert wgm_spin(orbit, pol, comp) == expected


def test_total_j_examples():
    assert wgm_total_j(CCW, TM, INNER, 10) == 10
    assert wgm_total_j(CCW, TM, OUTER, 10) == 10
    assert wgm_total_j(CW, TM, OUTER, 7) == -7


@pytest.mark.parametrize("pol,comp", [(TE, INNER), (TE, OUTER), (TM, NONE)])
def test_invalid_component(pol, comp):
    with pytest.raises(InvalidComponentError):
        wgm_oam(CCW, pol, comp, 5)
    with pytest.raises(InvalidComponentError):
        wgm_spin(CW, pol, comp)


def test_j_consistency_and_mirror_exhaustive():
    combos = [(TE, NONE), (TM, INNER), (TM, OUTER)]
    for m in range(1, 101):
        for orbit in Orbit:
            for pol, comp in combos:
                t = angular_momenta(orbit, pol, comp, m)
                assert t.J == t.L + t.S == wgm_total_j(orbit, pol, comp, m)
                assert abs(t.J) == m
                assert t.J == orbit.sign * m
        for pol, comp in combos:
            assert wgm_oam(CW, pol, comp, m) == -wgm_oam(CCW, pol, comp, m)
            assert wgm_spin(CW, pol, comp) == -wgm_spin(CCW, pol, comp)


def test_decompose_examples():
    s = 1 / math.sqrt(2)
    assert inner_outer_decompose(1.0, 0.0) == pytest.approx((s, s))
    assert inner_outer_decompose(0.0, 1.0) == pytest.approx((-s, s))


@settings(max_examples=200)
@given(st.complex_numbers(max_magnitude=1e6), st.complex_numbers(max_magnitude=1e6))
def test_decompose_round_trip(a, b):
    e_r, e_phi = inner_outer_recompose(*inner_outer_decompose(a, b))
    assert abs(e_r - a) <= 1e-14 * max(1.0, abs(a), abs(b))
    assert abs(e_phi - b) <= 1e-14 * max(1.0, abs(a), abs(b))


# --- resonances -----------------------------------------------------------

def _textbook_condition(x, l, n, pol):
    """P psi'(nx) chi(x) - psi(nx) chi'(x) with scipy's spherical Bessel functions."""
    p = n if pol == "TE" else 1.0 / n
    u = n * x
    psi = u * special.spherical_jn(l, u)
    dpsi = special.spherical_jn(l, u) + u * special.spherical_jn(l, u, derivative=True)
    chi = x * special.spherical_yn(l, x)
    dchi = special.spherical_yn(l, x) + x * special.spherical_yn(l, x, derivative=True)
    return p * dpsi * chi - psi * dchi


def _dense_scan_first_root(l, n, pol):
    xs = np.arange(l / n, l + 10.0, 1e-3)
    f = _textbook_condition(xs, l, n, pol)
    k = int(np.nonzero(np.sign(f[:-1]) != np.sign(f[1:]))[0][0])
    return optimize.brentq(_textbook_condition, xs[k], xs[k + 1], args=(l, n, pol), xtol=1e-14)


@pytest.mark.parametrize("pol,frozen", [(TE, MIE_TE_L50), (TM, MIE_TM_L50)])
def test_mie_root_l50(geometry, pol, frozen):
    x = resonance_size_parameter(geometry, pol, 50)
    assert x == pytest.approx(frozen, rel=1e-12)
    assert x == pytest.approx(_dense_scan_first_root(50, 2.19, pol.value), rel=1e-11)


@pytest.mark.parametrize("l", [20, 75, 120])
def test_roots_match_independent_scan(geometry, l):
    for pol in Polarization:
        assert resonance_size_parameter(geometry, pol, l) == pytest.approx(
            _dense_scan_first_root(l, 2.19, pol.value), rel=1e-11)


def test_radial_orders_increase(geometry):
    xs = [resonance_size_parameter(geometry, TE, 60, q) for q in (1, 2, 3)]
    assert xs[0] < xs[1] < xs[2]


def test_window_exhausted(geometry):
    with pytest.raises(RootNotFoundError):
        resonance_size_parameter(geometry, TE, 50, 1, window=(50 / 2.19, 50 / 2.19 + 0.5))


def test_index_validation():
    with pytest.raises(ValueError):
        WgmIndex(CCW, TE, 0)
    with pytest.raises(ValueError):
        SphereGeometry(1e-3, 1.0)


@pytest.mark.parametrize("pol,limit", [(TE, math.pi), (TM, 4.493409457909064)])
def test_perfect_cavity_limit(pol, limit):
    # for l = 1 the interior size parameter n x tends to the first zero of j_0 (TE) or j_1 (TM)
    vals = []
    for n in (50.0, 500.0):
        x = resonance_size_parameter(SphereGeometry(1e-3, n), pol, 1)
        vals.append(n * x)
    assert abs(vals[1] - limit) < abs(vals[0] - limit)
    assert vals[1] == pytest.approx(limit, rel=5e-3)


def test_fsr_against_circumference_formula(geometry):
    oracle = SPEED_OF_LIGHT / (2 * math.pi * geometry.refractive_index * geometry.radius)
    for m in (100, 200):
        f = fsr(geometry, m) / (2 * math.pi)
        assert f == pytest.approx(oracle, rel=0.05)
        assert f > 0


def test_fsr_smooth(geometry):
    for m in (100, 150, 200):
        assert fsr(geometry, m) / fsr(geometry, m + 1) == pytest.approx(1.0, abs=0.01)


def test_birefringence_ratio(geometry):
    r100 = birefringence_ratio(geometry, 100)
    r200 = birefringence_ratio(geometry, 200)
    assert r100 == pytest.approx(0.9, abs=0.05)
    assert abs(r200 - r100) < 0.02
    assert 0 < geometric_birefringence(geometry, 100) < fsr(geometry, 100)


def test_birefringence_scale_free():
    a = birefringence_ratio(SphereGeometry(0.5e-3, 2.19), 120)
    b = birefringence_ratio(SphereGeometry(3.7e-3, 2.19), 120)
    assert a == pytest.approx(b, rel=1e-12)


def test_physical_scale_supported():
    t = time.perf_counter()
    x = resonance_size_parameter(SphereGeometry(0.5e-3, 2.19), TE, 4600)
    assert 4600 / 2.19 < x < 4600
    assert time.perf_counter() - t < 20


# --- fields ----------------------------------------------------------------

def test_te_profile_decays_and_is_continuous(modes):
    mode = modes(CCW, TE, 60)
    e = mode.radial(np.array([1.0, 1.0 + 1e-12, 1.2, 1.4]))
    assert abs(e[1] - e[0]) <= 1e-8 * abs(e[0])
    assert abs(e[3]) < abs(e[2]) < abs(e[1])


def test_tm_boundary_conditions(modes, geometry):
    mode = modes(CCW, TM, 60)
    n2 = geometry.refractive_index ** 2
    (er_in, ephi_in), (er_out, ephi_out) = (mode.radial(1.0), mode.radial(1.0 + 1e-12))
    assert abs(ephi_out - ephi_in) <= 1e-8 * abs(ephi_in)
    assert abs(er_out - n2 * er_in) <= 1e-8 * abs(er_out)


def test_tm_equatorial_components(modes):
    mode = modes(CCW, TM, 100)
    e_r, e_phi = tm_equatorial_components(mode, 0.05)
    peak = max(np.max(np.abs(mode.profile["E_r"])), np.max(np.abs(mode.profile["E_phi"])))
    assert abs(e_r) < 1e-20 * peak and abs(e_phi) < 1e-20 * peak
    assert peak_radius(mode.r, np.abs(mode.profile["E_r"]) ** 2) < 1.0
    with pytest.raises(PolarizationMismatchError):
        tm_equatorial_components(modes(CCW, TE, 100), 0.5)


def test_normalized_profiles(modes):
    xg, wg = np.polynomial.legendre.leggauss(400)
    r = 0.75 * (xg + 1.0)
    w = 0.75 * wg
    te = modes(CCW, TE, 80)
    assert np.sum(w * te.radial(r) ** 2 * r ** 2) == pytest.approx(1.0, rel=1e-8)
    xt, wt = np.polynomial.legendre.leggauss(200)
    theta = 0.5 * math.pi * (xt + 1)
    polar_norm = math.pi ** 2 * np.sum(wt * te.polar(theta) ** 2 * np.sin(theta))
    assert polar_norm == pytest.approx(1.0, rel=1e-8)


@pytest.mark.parametrize("l", [50, 100, 200])
def test_spin_hall_ordering(modes, l):
    mode = modes(CCW, TM, l)
    r_i = peak_radius(mode.r, np.abs(mode.profile["E_i"]) ** 2)
    r_o = peak_radius(mode.r, np.abs(mode.profile["E_o"]) ** 2)
    assert r_i < r_o < 1.0


def test_peak_radius_examples():
    r = np.linspace(0, 2, 201)
    assert peak_radius(r, r * (2 - r)) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(NoInteriorMaximumError):
        peak_radius(r, r)


def test_solve_mode_accepts_tuple(geometry):
    mode = solve_mode(geometry, (CW, TM, 30, 1))
    assert mode.index.orbit is CW and set(mode.profile) == {"E_r", "E_phi", "E_i", "E_o"}
