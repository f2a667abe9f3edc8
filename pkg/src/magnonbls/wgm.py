"""Whispering-gallery modes of a dielectric sphere.

Resonances come from the lossless continuity conditions at the surface, with
the outgoing exterior wave replaced by the Neumann function (the usual real
approximation for high-Q modes)::

    TE:  n   psi_l'(n x) / psi_l(n x) = chi_l'(x) / chi_l(x)
    TM:  1/n psi_l'(n x) / psi_l(n x) = chi_l'(x) / chi_l(x)

with x = k0 R, psi_l(x) = x j_l(x) and chi_l(x) = x y_l(x).  Only the
fundamental polar family is modelled (polar index l equals the azimuthal
index m), so the field is concentrated on the equator with a sin(theta)**l
polar profile.

Fields use the exp(-i omega t) convention.  On the equator the TM field has
a radial part E_r and an azimuthal part E_phi in quadrature; both are
returned as real profiles with the quadrature phase factored out, which is
the form the inner/outer decomposition acts on.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import enum
from functools import lru_cache
import math

import numpy as np
from scipy.special import gammaln

from . import specfun
from .errors import (InvalidComponentError, NoInteriorMaximumError,
                     PolarizationMismatchError, RootNotFoundError)

SPEED_OF_LIGHT = 299_792_458.0
SQRT2 = math.sqrt(2.0)


class Orbit(str, enum.Enum):
    CW = "CW"
    CCW = "CCW"

    @property
    def sign(self):
        return 1 if self is Orbit.CCW else -1

    def mirrored(self):
        return Orbit.CW if self is Orbit.CCW else Orbit.CCW


class Polarization(str, enum.Enum):
    TE = "TE"
    TM = "TM"


class Component(str, enum.Enum):
    NONE = "none"
    INNER = "inner"
    OUTER = "outer"


@dataclass(frozen=True)
class SphereGeometry:
    radius: float
    refractive_index: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("sphere radius must be positive")
        if not self.refractive_index > 1:
            raise ValueError("refractive index must exceed 1")

    def omega(self, size_parameter):
        """Angular frequency for a vacuum size parameter k0 R."""
        return SPEED_OF_LIGHT * size_parameter / self.radius


@dataclass(frozen=True)
class WgmIndex:
    orbit: Orbit
    polarization: Polarization
    m: int
    q: int = 1

    def __post_init__(self):
        object.__setattr__(self, "orbit", Orbit(self.orbit))
        object.__setattr__(self, "polarization", Polarization(self.polarization))
        if self.m < 1 or self.q < 1:
            raise ValueError(f"WGM indices need m >= 1 and q >= 1, got m={self.m}, q={self.q}")


@dataclass(frozen=True)
class AngularMomentumTriple:
    L: int
    S: int
    J: int


# --- angular momentum bookkeeping ----------------------------------------
#
# A TM mode has two circular components.  The one on e_+^* (spin +1) is the
# inner component for a CCW orbit and the outer one for a CW orbit.

def _check_component(polarization, component):
    polarization, component = Polarization(polarization), Component(component)
    if (polarization is Polarization.TE) != (component is Component.NONE):
        raise InvalidComponentError(
            f"{polarization.value} has no component {component.value!r}")
    return polarization, component


def circular_slot(orbit, component):
    """+1 if the TM component sits on e_+^*, -1 if on e_-^*."""
    orbit, component = Orbit(orbit), Component(component)
    if component is Component.NONE:
        raise InvalidComponentError("TE field has no circular component")
    inner = component is Component.INNER
    return 1 if inner == (orbit is Orbit.CCW) else -1


def wgm_spin(orbit, polarization, component):
    polarization, component = _check_component(polarization, component)
    if polarization is Polarization.TE:
        return 0
    return circular_slot(orbit, component)


def wgm_oam(orbit, polarization, component, m):
    """Orbital angular momentum of a WGM field component."""
    orbit = Orbit(orbit)
    polarization, component = _check_component(polarization, component)
    if polarization is Polarization.TE:
        return orbit.sign * m
    return orbit.sign * m - wgm_spin(orbit, polarization, component)


def wgm_total_j(orbit, polarization, component, m):
    return wgm_oam(orbit, polarization, component, m) + wgm_spin(orbit, polarization, component)


def angular_momenta(orbit, polarization, component, m):
    L = wgm_oam(orbit, polarization, component, m)
    S = wgm_spin(orbit, polarization, component)
    return AngularMomentumTriple(L, S, L + S)


def inner_outer_decompose(E_r, E_phi):
    """(E_r, E_phi) -> (E_i, E_o) for E_r = (E_i+E_o)/sqrt2, E_phi = -(E_i-E_o)/sqrt2."""
    return (E_r - E_phi) / SQRT2, (E_r + E_phi) / SQRT2


def inner_outer_recompose(E_i, E_o):
    return (E_i + E_o) / SQRT2, -(E_i - E_o) / SQRT2


# --- resonances ------------------------------------------------------------

def characteristic_function(x, l, n, polarization):
    """Pole-free form of the resonance condition (poles only above x = l)."""
    polarization = Polarization(polarization)
    p = n if polarization is Polarization.TE else 1.0 / n
    psi, dpsi = specfun.riccati_psi(l, n * np.asarray(x, float))
    return p * dpsi - psi * specfun.riccati_chi_logderiv(l, x)


@lru_cache(maxsize=4096)
def _size_parameter(n, polarization, l, q, lo, hi, step):
    def g(x):
        return characteristic_function(x, l, n, polarization)

    found = []
    chunk = 400
    a = lo
    while a < hi and len(found) < q:
        b = min(hi, a + chunk * step)
        cells = max(1, int(math.ceil((b - a) / step)))
        for br in specfun.scan_brackets(g, a, b, cells):
            x = specfun.find_root(g, br, tol=1e-13)
            scale = max(abs(float(g(br.lo))), abs(float(g(br.hi))))
            if abs(float(g(x))) <= 1e-6 * scale:   # rejects pole crossings
                found.append(x)
                if len(found) == q:
                    break
        a = b
    if len(found) < q:
        raise RootNotFoundError(
            f"{polarization} l={l}: only {len(found)} of {q} resonances in [{lo:g}, {hi:g}]")
    return found[q - 1]


def resonance_size_parameter(geometry, polarization, l, q=1, window=None):
    """q-th resonance x = k0 R of multipole order l.

    ``window`` defaults to [l/n, l + 10]; it is scanned upward in steps of
    0.05/n in x (0.05 in the internal size parameter n x).
    """
    if l < 1 or q < 1:
        raise ValueError("need l >= 1 and q >= 1")
    n = float(geometry.refractive_index)
    lo, hi = window if window is not None else (l / n, l + 10.0)
    return _size_parameter(n, Polarization(polarization).value, int(l), int(q),
                           float(lo), float(hi), 0.05 / n)


def resonance_frequency(geometry, polarization, m, q=1):
    return geometry.omega(resonance_size_parameter(geometry, polarization, m, q))


def fsr(geometry, m, polarization=Polarization.TE, q=1):
    """omega(m+1) - omega(m) at fixed polarization and radial order."""
    return (resonance_frequency(geometry, polarization, m + 1, q)
            - resonance_frequency(geometry, polarization, m, q))


def geometric_birefringence(geometry, m, q=1):
    """TM-minus-TE resonance offset at equal (m, q), reduced modulo the TE FSR."""
    gb = (resonance_frequency(geometry, Polarization.TM, m, q)
          - resonance_frequency(geometry, Polarization.TE, m, q))
    return gb % fsr(geometry, m, Polarization.TE, q)


def birefringence_ratio(geometry, m, q=1):
    return geometric_birefringence(geometry, m, q) / fsr(geometry, m, Polarization.TE, q)


# --- mode fields -------------------------------------------------------------

def _log_polar_norm(l):
    # log of sqrt(2 pi * integral_0^pi sin^(2l+1)), i.e. norm of sin^l over the sphere
    k = 2 * l + 1
    log_int = 0.5 * math.log(math.pi) + gammaln((k + 1) / 2) - gammaln(k / 2 + 1)
    return 0.5 * (math.log(2 * math.pi) + log_int)


@dataclass(frozen=True, eq=False)
class WgmMode:
    """A solved WGM.

    ``r`` is the sampling grid in units of the sphere radius; ``profile``
    maps names to equatorial field samples on it ("E" for TE; "E_r",
    "E_phi", "E_i", "E_o" for TM).  Radial profiles are normalized so that
    the integral of |E|^2 r^2 dr over [0, r_max] is one; the polar factor
    sin(theta)**l is normalized over the full sphere.
    """

    index: WgmIndex
    geometry: SphereGeometry
    size_parameter: float
    frequency: float
    r: np.ndarray
    profile: dict
    _scale: float
    r_max: float

    @property
    def l(self):
        return self.index.m

    def _raw_te(self, r):
        x, n, l = self.size_parameter, self.geometry.refractive_index, self.l
        r = np.asarray(r, float)
        out = np.zeros_like(r)
        inside = (r > 0) & (r <= 1.0)
        outside = r > 1.0
        if np.any(inside):
            out[inside] = specfun.spherical_bessel_j(l, n * x * r[inside])
        if np.any(outside):
            jb = specfun.spherical_bessel_j(l, n * x)
            la, sa = specfun.log_abs_spherical_bessel_y(l, x * r[outside])
            lb, sb = specfun.log_abs_spherical_bessel_y(l, x)
            out[outside] = jb * sa * sb * np.exp(la - lb)
        return out

    def _raw_tm(self, r):
        x, n, l, m = self.size_parameter, self.geometry.refractive_index, self.l, self.index.m
        r = np.asarray(r, float)
        e_r = np.zeros_like(r)
        e_phi = np.zeros_like(r)
        inside = (r > 0) & (r <= 1.0)
        outside = r > 1.0
        if np.any(inside):
            rho = n * x * r[inside]
            psi, dpsi = specfun.riccati_psi(l, rho)
            e_r[inside] = l * (l + 1) * psi / rho ** 2
            e_phi[inside] = -m * dpsi / rho
        if np.any(outside):
            u = x * r[outside]
            psi_b, dpsi_b = specfun.riccati_psi(l, n * x)
            # boundary values: tangential E continuous, normal D continuous
            er_b = l * (l + 1) * psi_b / x ** 2          # = n^2 E_r(R-)
            ephi_b = -m * dpsi_b / (n * x)
            la, sa = specfun.log_abs_spherical_bessel_y(l, u)
            lb, sb = specfun.log_abs_spherical_bessel_y(l, x)
            y_ratio = sa * sb * np.exp(la - lb)          # y_l(u) / y_l(x)
            e_r[outside] = er_b * y_ratio * x / u
            ld_u = specfun.riccati_chi_logderiv(l, u)
            ld_b = specfun.riccati_chi_logderiv(l, x)
            # chi'(u)/chi'(x) = [ld(u) chi(u)] / [ld(x) chi(x)], chi(u)/chi(x) = u y(u) / (x y(x))
            e_phi[outside] = ephi_b * (ld_u * u * y_ratio) / (ld_b * x) * x / u
        return e_r, e_phi

    def radial(self, r):
        """Normalized equatorial profile at radii ``r`` (sphere radii).

        TE: E(r).  TM: (E_r, E_phi).
        """
        if self.index.polarization is Polarization.TE:
            return self._raw_te(r) * self._scale
        e_r, e_phi = self._raw_tm(r)
        return e_r * self._scale, e_phi * self._scale

    def component(self, r, component):
        """Radial profile of one field component: E for TE, E_i or E_o for TM."""
        component = Component(component)
        _check_component(self.index.polarization, component)
        if component is Component.NONE:
            return self.radial(r)
        e_i, e_o = inner_outer_decompose(*self.radial(r))
        return e_i if component is Component.INNER else e_o

    def polar(self, theta):
        """Normalized polar profile sin(theta)**l."""
        s = np.abs(np.sin(np.asarray(theta, float)))
        with np.errstate(divide="ignore"):
            return np.exp(self.l * np.log(s) - _log_polar_norm(self.l))


def _normalization(mode_raw, r_max, is_te):
    xg, wg = np.polynomial.legendre.leggauss(400)
    r = 0.5 * r_max * (xg + 1.0)
    w = 0.5 * r_max * wg
    if is_te:
        dens = mode_raw(r) ** 2
    else:
        e_r, e_phi = mode_raw(r)
        dens = e_r ** 2 + e_phi ** 2
    return 1.0 / math.sqrt(float(np.sum(w * dens * r ** 2)))


def solve_mode(geometry, index, r=None, r_max=1.5):
    """Solve the resonance for ``index`` and sample its equatorial profile."""
    index = WgmIndex(*index) if isinstance(index, tuple) else index
    x = resonance_size_parameter(geometry, index.polarization, index.m, index.q)
    if r is None:
        r = np.linspace(r_max / 2000, r_max, 2000)
    r = np.asarray(r, float)
    is_te = index.polarization is Polarization.TE
    proto = WgmMode(index, geometry, x, geometry.omega(x), r, {}, 1.0, r_max)
    scale = _normalization(proto._raw_te if is_te else proto._raw_tm, r_max, is_te)
    mode = WgmMode(index, geometry, x, geometry.omega(x), r, {}, scale, r_max)
    if is_te:
        mode.profile["E"] = mode.radial(r)
    else:
        e_r, e_phi = mode.radial(r)
        e_i, e_o = inner_outer_decompose(e_r, e_phi)
        mode.profile.update(E_r=e_r, E_phi=e_phi, E_i=e_i, E_o=e_o)
    return mode


def solve_comb(geometry, orbit, polarization, ms, q=1, threads=1, r=None):
    """Solve a list of azimuthal indices; independent solves run in a thread pool."""
    indices = [WgmIndex(orbit, polarization, int(m), q) for m in ms]
    if threads <= 1:
        return [solve_mode(geometry, i, r) for i in indices]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda i: solve_mode(geometry, i, r), indices))


def tm_equatorial_components(mode, r):
    """(E_r, E_phi) of a TM mode on the equator at radius ``r`` (sphere radii)."""
    if mode.index.polarization is not Polarization.TM:
        raise PolarizationMismatchError("equatorial TM components need a TM mode")
    e_r, e_phi = mode.radial(r)
    return np.asarray(e_r, complex)[()], np.asarray(e_phi, complex)[()]


def peak_radius(r, profile):
    """Abscissa of the interior maximum, refined by a parabola through three samples."""
    r = np.asarray(r, float)
    profile = np.asarray(profile, float)
    k = int(np.argmax(profile))
    if k == 0 or k == len(profile) - 1:
        raise NoInteriorMaximumError("profile maximum lies on the grid boundary")
    a = np.polyfit(r[k - 1:k + 2], profile[k - 1:k + 2], 2)
    if a[0] >= 0:
        return float(r[k])
    return float(-a[1] / (2 * a[0]))
