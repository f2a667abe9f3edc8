"""Magnon-induced Brillouin scattering between WGMs.

A TE photon in a given orbit scatters into the TM mode of the same orbit.
The Stokes process (magnon created) couples through the e_+^* component of
the outgoing TM field, the anti-Stokes process (magnon annihilated) through
the e_-^* component; which of those is the inner or outer component depends
on the orbit (see :data:`COMPONENT`).  Integrating the coupling over the
azimuth leaves a Kronecker delta on the orbital angular momentum mismatch

    dL = L(TM component) - L(TE) + s L(magnon),   s = +1 Stokes, -1 anti-Stokes,

and integrating over time fixes omega_out = omega_in - s omega_m.

Tensors carry the vacuum permittivity; coupling amplitudes are quoted in
units of epsilon_0 (they keep the Faraday coefficient f).
"""
from dataclasses import dataclass
import enum
import math

import numpy as np

from .errors import (DisallowedChannelError, EmptyCatalogError, GridMismatchError,
                     MissingModeError, NonphysicalIndexError, PolarizationMismatchError)
from .walker import WalkerIndex, WalkerMode, walker_oam
from .wgm import (Component, Orbit, Polarization, WgmIndex, WgmMode, circular_slot,
                  wgm_oam)

EPSILON_0 = 8.8541878128e-12
SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class MaterialParams:
    """Magneto-optical constants; ``f`` is the Faraday coefficient."""

    epsilon_r: float
    M_s: float
    verdet: float
    k0: float

    def __post_init__(self):
        for name in ("epsilon_r", "M_s", "verdet", "k0"):
            if not getattr(self, name) > 0:
                raise ValueError(f"material parameter {name} must be positive")

    @classmethod
    def from_wavelength(cls, epsilon_r, M_s, verdet, vacuum_wavelength):
        return cls(epsilon_r, M_s, verdet, 2 * math.pi / vacuum_wavelength)

    @property
    def f(self):
        return 2.0 * math.sqrt(self.epsilon_r) * self.verdet / (self.k0 * self.M_s)


# YIG near 1.5 um: n = 2.19, mu0 Ms = 0.175 T, Faraday rotation ~ 240 deg/cm
YIG = MaterialParams.from_wavelength(2.19 ** 2, 1.39e5, 420.0, 1.55e-6)


class Process(str, enum.Enum):
    STOKES = "Stokes"
    ANTI_STOKES = "AntiStokes"

    @property
    def sign(self):
        """+1 for Stokes, -1 for anti-Stokes: the sign of the magnon term in dL."""
        return 1 if self is Process.STOKES else -1

    @property
    def slot(self):
        """Circular slot of the outgoing TM field (+1: e_+^*, -1: e_-^*)."""
        return self.sign


# Which TM component each (orbit, process) populates.
COMPONENT = {
    (Orbit.CW, Process.STOKES): Component.OUTER,
    (Orbit.CW, Process.ANTI_STOKES): Component.INNER,
    (Orbit.CCW, Process.STOKES): Component.INNER,
    (Orbit.CCW, Process.ANTI_STOKES): Component.OUTER,
}


def output_component(orbit, process):
    return COMPONENT[Orbit(orbit), Process(process)]


def process_for(orbit, component):
    """Inverse of :func:`output_component`."""
    return Process.STOKES if circular_slot(orbit, component) == 1 else Process.ANTI_STOKES


# --- permittivity ----------------------------------------------------------

BASIS_M0 = np.eye(3)
BASIS_M1 = np.array([[0, 0, 0], [0, 0, -1], [0, 1, 0]], dtype=float)
BASIS_M2 = np.array([[0, 0, 1], [0, 0, 0], [-1, 0, 0]], dtype=float)
BASIS_M3 = np.array([[0, -1, 0], [1, 0, 0], [0, 0, 0]], dtype=float)

LADDER_PLUS = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]], dtype=float)
LADDER_MINUS = LADDER_PLUS.T.copy()
LADDER_Z = np.diag([1.0, 0.0, -1.0])

E_PLUS = -np.array([1, 1j, 0]) / SQRT2
E_ZERO = np.array([0, 0, 1], dtype=complex)
E_MINUS = np.array([1, -1j, 0]) / SQRT2
# columns e_+, e_0, e_-; a Cartesian tensor T reads U^H T U in this basis
SPHERICAL_BASIS = np.column_stack([E_PLUS, E_ZERO, E_MINUS])


def to_spherical_basis(tensor):
    U = SPHERICAL_BASIS
    return U.conj().T @ np.asarray(tensor) @ U


def permittivity_tensor_cartesian(Mx, My, params, include_static=True):
    """eps0 (eps_r M0 + i f Mx M1 + i f My M2 + i f Ms M3).

    ``Mx``/``My`` may be complex (time-harmonic amplitudes).
    """
    f = params.f
    eps = 1j * f * (Mx * BASIS_M1 + My * BASIS_M2)
    if include_static:
        eps = eps + params.epsilon_r * BASIS_M0 + 1j * f * params.M_s * BASIS_M3
    return EPSILON_0 * eps


def permittivity_tensor_spherical(M_plus, M_minus, params):
    """Dynamic part in the spherical basis: eps0 f/sqrt2 (M_- M_+ + M_+ M_-)."""
    f = params.f
    return EPSILON_0 * f / SQRT2 * (M_minus * LADDER_PLUS + M_plus * LADDER_MINUS)


# --- selection rules -------------------------------------------------------

def delta_L(orbit, process, m_TE, m_TM, m_mag):
    """OAM mismatch of a TE -> TM scattering channel; zero iff allowed."""
    orbit, process = Orbit(orbit), Process(process)
    comp = output_component(orbit, process)
    return (wgm_oam(orbit, Polarization.TM, comp, m_TM)
            - wgm_oam(orbit, Polarization.TE, Component.NONE, m_TE)
            + process.sign * walker_oam(m_mag))


def allowed_m_tm(orbit, process, m_TE, m_mag):
    """The unique TM azimuthal index with delta_L = 0."""
    orbit, process = Orbit(orbit), Process(process)
    comp = output_component(orbit, process)
    # L_TM(m) = sign*m - slot, L_TE = sign*m_TE; solve dL = 0 for m
    slot = circular_slot(orbit, comp)
    m_tm = m_TE + orbit.sign * (slot - process.sign * walker_oam(m_mag))
    if m_tm < 1:
        raise NonphysicalIndexError(
            f"{orbit.value} {process.value} with m_TE={m_TE}, m_mag={m_mag} needs m_TM={m_tm} < 1")
    return m_tm


def azimuthal_overlap(delta_L):
    """Integral of exp(i dL phi) over one turn, exact."""
    return 2.0 * math.pi if int(delta_L) == 0 else 0.0


def azimuthal_overlap_numeric(delta_L, samples=256):
    """Same integral by the periodic trapezoid rule (exact for |dL| < samples)."""
    phi = 2.0 * math.pi * np.arange(samples) / samples
    return complex(np.exp(1j * delta_L * phi).sum() * (2.0 * math.pi / samples))


def scattered_frequency(process, omega1, omega_m):
    """omega_out = omega_1 - omega_m (Stokes) or omega_1 + omega_m (anti-Stokes)."""
    if not omega_m > 0:
        raise ValueError("magnon frequency must be positive")
    out = omega1 - Process(process).sign * omega_m
    if not out > 0:
        raise ValueError(f"scattered frequency {out:g} rad/s is not positive")
    return out


# --- coupling amplitude --------------------------------------------------

def _quadrature(l_in, l_out, n_r, n_theta):
    xr, wr = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * (xr + 1.0)
    wr = 0.5 * wr
    # sin^l is negligible beyond ~8 standard deviations from the equator
    half = min(0.5 * math.pi, 8.0 / math.sqrt(max(1, min(l_in, l_out))))
    xt, wt = np.polynomial.legendre.leggauss(n_theta)
    theta = 0.5 * math.pi + half * xt
    wt = half * wt
    return r, wr, theta, wt


def overlap_integral(r, theta, weights, envelope, e_in, e_out):
    """Weighted sum of envelope * e_in * conj(e_out) over a sampled (r, theta) grid.

    All sample arrays must share the grid shape.
    """
    shapes = {np.shape(a) for a in (r, theta, weights, envelope, e_in, e_out)}
    if len(shapes) != 1:
        raise GridMismatchError(f"sampled profiles live on different grids: {sorted(shapes)}")
    return complex(np.sum(weights * envelope * e_in * np.conj(e_out)))


def coupling_amplitude(input_mode, output_mode, component, magnon, params,
                       n_r=64, n_theta=32, rotation=0.0):
    """Spatial coupling of a TE -> TM channel, in units of epsilon_0.

    (f / 2 sqrt2) * (+-1) * azimuthal overlap * radial-polar overlap of
    magnon envelope, input profile and conjugated output component.  The
    minus sign belongs to the e_-^* (anti-Stokes) term.  ``rotation`` turns
    the magnon texture about the axis by that angle.
    """
    if input_mode.index.polarization is not Polarization.TE:
        raise PolarizationMismatchError("input must be a TE mode")
    if output_mode.index.polarization is not Polarization.TM:
        raise PolarizationMismatchError("output must be a TM mode")
    orbit = input_mode.index.orbit
    if output_mode.index.orbit is not orbit:
        raise ValueError("cross-orbit scattering is outside the model")
    component = Component(component)
    process = process_for(orbit, component)
    dl = delta_L(orbit, process, input_mode.index.m, output_mode.index.m, magnon.index.m_mag)
    az = azimuthal_overlap(dl)
    if az == 0.0:
        return 0j

    r, wr, theta, wt = _quadrature(input_mode.l, output_mode.l, n_r, n_theta)
    R, T = np.meshgrid(r, theta, indexing="ij")
    W = np.outer(wr * r ** 2, wt * np.sin(theta))
    env = magnon.envelope_at(R * np.sin(T), R * np.cos(T))
    e_in = np.outer(input_mode.component(r, Component.NONE), input_mode.polar(theta))
    e_out = np.outer(output_mode.component(r, component), output_mode.polar(theta))
    radial_polar = overlap_integral(R, T, W, env, e_in, e_out)
    # M_-(phi - a) = M_perp exp(i L (phi - a)) for Stokes, conjugate winding otherwise
    phase = np.exp(-1j * process.sign * magnon.L_z * rotation)
    return params.f / (2 * SQRT2) * process.slot * az * radial_polar * phase


# --- channel enumeration -------------------------------------------------

@dataclass(frozen=True)
class ScatteringChannel:
    input: WgmIndex
    output: WgmIndex
    component: Component
    magnon: WalkerIndex
    process: Process
    delta_L: int
    omega_in: float
    omega_out: float
    omega_resonance: float
    amplitude: complex

    @property
    def detuning(self):
        """Scattered frequency minus the resonance of the allowed TM mode."""
        return self.omega_out - self.omega_resonance

    def as_row(self):
        return {
            "orbit": self.input.orbit.value,
            "process": self.process.value,
            "m_TE": self.input.m,
            "m_TM": self.output.m,
            "component": self.component.value,
            "m_mag": self.magnon.m_mag,
            "delta_L": self.delta_L,
            "omega_out": self.omega_out,
            "detuning": self.detuning,
            "abs_amplitude": float(abs(self.amplitude)),
        }


def _lookup_tm(catalog, m, q):
    for mode in catalog:
        idx = mode.index
        if idx.polarization is Polarization.TM and idx.m == m and idx.q == q:
            return mode
    raise MissingModeError(f"no TM mode with m={m}, q={q} in the catalog")


def enumerate_channels(input_mode, magnon, tm_catalog, params=None, coupling="overlap",
                       omega_m=None, n_r=64, n_theta=32):
    """The Stokes and anti-Stokes channels open to a TE input.

    ``input_mode`` is a solved TE :class:`WgmMode`; outputs stay in its orbit.
    ``coupling`` is "overlap" (quadrature, needs ``params``), "uniform"
    (unit amplitude for every allowed channel) or None (amplitude NaN).
    ``omega_m`` overrides the magnon's own frequency.
    """
    if not tm_catalog:
        raise EmptyCatalogError("TM catalog is empty")
    if input_mode.index.polarization is not Polarization.TE:
        raise PolarizationMismatchError("scattering input must be a TE mode")
    if not isinstance(magnon, WalkerMode):
        raise TypeError("magnon must be a WalkerMode")
    orbit = input_mode.index.orbit
    q = input_mode.index.q
    w_m = magnon.omega_m if omega_m is None else omega_m
    channels = []
    for process in (Process.STOKES, Process.ANTI_STOKES):
        m_tm = allowed_m_tm(orbit, process, input_mode.index.m, magnon.index.m_mag)
        tm = _lookup_tm(tm_catalog, m_tm, q)
        comp = output_component(orbit, process)
        out_idx = WgmIndex(orbit, Polarization.TM, m_tm, q)
        if tm.index.orbit is not orbit:
            tm = WgmMode(out_idx, tm.geometry, tm.size_parameter, tm.frequency, tm.r,
                         tm.profile, tm._scale, tm.r_max)
        if coupling == "overlap":
            if params is None:
                raise ValueError("overlap coupling needs material parameters")
            amp = coupling_amplitude(input_mode, tm, comp, magnon, params, n_r, n_theta)
        elif coupling == "uniform":
            amp = 1.0 + 0j
        elif coupling is None:
            amp = complex(float("nan"))
        else:
            raise ValueError(f"unknown coupling model {coupling!r}")
        channels.append(ScatteringChannel(
            input=input_mode.index, output=out_idx, component=comp, magnon=magnon.index,
            process=process,
            delta_L=delta_L(orbit, process, input_mode.index.m, m_tm, magnon.index.m_mag),
            omega_in=input_mode.frequency,
            omega_out=scattered_frequency(process, input_mode.frequency, w_m),
            omega_resonance=tm.frequency, amplitude=amp))
    return channels


def require_allowed(channel):
    if channel.delta_L != 0:
        raise DisallowedChannelError(f"channel has delta_L = {channel.delta_L}")
