import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from magnonbls.errors import DomainError, NoSignChangeError
from magnonbls.specfun import (Bracket, find_root, log_abs_spherical_bessel_y, riccati_chi_logderiv,
                               riccati_psi, scan_brackets, spherical_bessel_j,
                               spherical_bessel_j_derivative, spherical_bessel_y)

mpmath.mp.dps = 40


def mp_j(l, x):
    x = mpmath.mpf(x)
    return mpmath.sqrt(mpmath.pi / (2 * x)) * mpmath.besselj(l + mpmath.mpf(1) / 2, x)


def mp_y(l, x):
    x = mpmath.mpf(x)
    return mpmath.sqrt(mpmath.pi / (2 * x)) * mpmath.bessely(l + mpmath.mpf(1) / 2, x)


@pytest.mark.parametrize("l,x", [(50, 60), (100, 120), (200, 250), (50, 20), (200, 91),
                                 (1000, 900), (5, 0.001), (0, 3.0), (1, 0.005)])
def test_j_matches_arbitrary_precision(l, x):
    ref = float(mp_j(l, x))
    assert spherical_bessel_j(l, x) == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("l,x", [(50, 60), (200, 91), (1000, 900), (3, 0.5)])
def test_y_matches_arbitrary_precision(l, x):
    ref = float(mp_y(l, x))
    assert spherical_bessel_y(l, x) == pytest.approx(ref, rel=1e-12)


def test_log_y_deep_in_the_evanescent_region():
    l, x = 4600, 1000.0
    logabs, sign = log_abs_spherical_bessel_y(l, x)
    ref = mp_y(l, x)
    assert logabs == pytest.approx(float(mpmath.log(abs(ref))), rel=1e-12)
    assert sign == -1


@pytest.mark.parametrize("l,x", [(50, 60.0), (1, 2.0), (10, 3.3)])
def test_derivative_against_finite_difference(l, x):
    h = 1e-6
    fd = (spherical_bessel_j(l, x + h) - spherical_bessel_j(l, x - h)) / (2 * h)
    assert spherical_bessel_j_derivative(l, x) == pytest.approx(fd, rel=1e-7, abs=1e-14)


def test_vectorized_shape_and_values():
    x = np.linspace(1.0, 80.0, 17).reshape(17, 1)
    out = spherical_bessel_j(30, x)
    assert out.shape == x.shape
    for xi, v in zip(x.ravel(), out.ravel()):
        assert v == pytest.approx(float(mp_j(30, xi)), rel=1e-11, abs=1e-300)


def test_nonpositive_argument_rejected():
    with pytest.raises(DomainError):
        spherical_bessel_j(3, 0.0)
    with pytest.raises(DomainError):
        spherical_bessel_y(3, -1.0)


@settings(max_examples=200, deadline=None)
@given(l=st.integers(1, 400), x=st.floats(0.1, 600.0))
def test_recurrence_identity(l, x):
    jm, j0, jp = (spherical_bessel_j(k, x) for k in (l - 1, l, l + 1))
    scale = max(abs(jm), abs(j0), abs(jp), 1e-300)
    assert abs(jm + jp - (2 * l + 1) / x * j0) <= 1e-10 * scale


@settings(max_examples=100, deadline=None)
@given(l=st.integers(1, 300), t=st.floats(0.5, 3.0))
def test_wronskian(l, t):
    # j_l y_{l-1} - j_{l-1} y_l = 1/x^2, kept where y_l stays representable
    x = t * l
    w = (spherical_bessel_j(l, x) * spherical_bessel_y(l - 1, x)
         - spherical_bessel_j(l - 1, x) * spherical_bessel_y(l, x))
    assert w * x * x == pytest.approx(1.0, rel=1e-9)


def test_riccati_helpers_consistent():
    l, x = 40, 37.5
    psi, dpsi = riccati_psi(l, x)
    assert psi == pytest.approx(x * spherical_bessel_j(l, x), rel=1e-14)
    h = 1e-6
    fd = (riccati_psi(l, x + h)[0] - riccati_psi(l, x - h)[0]) / (2 * h)
    assert dpsi == pytest.approx(fd, rel=1e-7)
    chi = lambda t: t * spherical_bessel_y(l, t)
    fd_log = (chi(x + h) - chi(x - h)) / (2 * h) / chi(x)
    assert riccati_chi_logderiv(l, x) == pytest.approx(fd_log, rel=1e-7)


def test_find_root_examples():
    assert find_root(math.cos, Bracket(1.0, 2.0)) == pytest.approx(math.pi / 2, abs=1e-12)
    assert find_root(lambda x: x ** 3 - 2, Bracket(0.0, 2.0)) == pytest.approx(2 ** (1 / 3), abs=1e-12)
    with pytest.raises(NoSignChangeError):
        find_root(lambda x: x * x + 1, Bracket(-1.0, 1.0))


@settings(max_examples=100, deadline=None)
@given(a=st.floats(-50, 50), w=st.floats(1e-3, 20))
def test_find_root_stays_in_bracket(a, w):
    root = 0.3 * w + a
    x = find_root(lambda t: math.tanh(t - root), Bracket(a, a + w))
    assert a <= x <= a + w
    assert x == pytest.approx(root, abs=1e-10)


def test_bracket_validation():
    with pytest.raises(ValueError):
        Bracket(1.0, 1.0)
    assert Bracket(0.0, 2.5).width == 2.5


def test_scan_brackets_find_all_sine_zeros():
    brs = scan_brackets(np.sin, 0.5, 10.0, 200)
    roots = [find_root(np.sin, b) for b in brs]
    assert roots == pytest.approx([math.pi, 2 * math.pi, 3 * math.pi], abs=1e-12)


def test_scan_brackets_root_on_grid_node_reported_once():
    brs = scan_brackets(lambda x: x - 5.0, 0.0, 10.0, 100)
    assert len(brs) == 1 and brs[0].lo <= 5.0 <= brs[0].hi
    assert len(scan_brackets(lambda x: x, 0.0, 1.0, 10)) == 1


def test_scan_brackets_skips_nonfinite_cells():
    f = lambda x: np.where(np.abs(x - 2.0) < 0.3, np.nan, x - 5.0)
    brs = scan_brackets(f, 0.0, 10.0, 100)
    assert len(brs) == 1 and brs[0].lo <= 5.0 <= brs[0].hi
