"""Walker magnetostatic modes of a uniformly magnetized sphere.

Only the azimuthal structure of a mode enters the selection rules, and that
structure is fixed by the index ``m_mag``: the transverse magnetization winds
as ``M_+ = M_perp(rho, z) exp(-i L_z phi)`` with ``L_z = -(m_mag - 1)``.  The
axially symmetric envelope ``M_perp`` is a model: a small family of
polynomial shapes in the cylindrical coordinates (rho, z), measured in units
of the sphere radius, normalized so that the integral of ``M_perp**2`` over
the unit sphere is one.

Eigenfrequencies are not solved for here; they are inputs.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from .errors import DegenerateEnvelopeError, WindingInconsistencyError, ZeroNormError


def walker_oam(m_mag):
    """Orbital angular momentum carried by a Walker mode with index m_mag."""
    return -(int(m_mag) - 1)


def _uniform(rho, z, lz):
    return np.ones(np.broadcast(rho, z).shape)


def _dome(rho, z, lz):
    return 1.0 - rho ** 2 - z ** 2


def _vortex(rho, z, lz):
    return np.broadcast_to(np.abs(rho) ** abs(lz), np.broadcast(rho, z).shape).astype(float)


def _vortex_dome(rho, z, lz):
    return np.abs(rho) ** abs(lz) * (1.0 - rho ** 2 - z ** 2)


ENVELOPES = {
    "uniform": _uniform,
    "dome": _dome,
    "vortex": _vortex,
    "vortex_dome": _vortex_dome,
}


@dataclass(frozen=True)
class WalkerIndex:
    n: int
    m_mag: int
    r: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"Walker index n must be >= 1, got {self.n}")
        if abs(self.m_mag) > self.n:
            raise ValueError(f"|m_mag| must not exceed n, got ({self.n}, {self.m_mag})")
        if self.r < 0:
            raise ValueError(f"Walker index r must be >= 0, got {self.r}")

    def label(self):
        m = f"{-self.m_mag}bar" if self.m_mag < 0 else str(self.m_mag)
        return f"({self.n},{m},{self.r})"


@dataclass(frozen=True)
class TransverseMagnetization:
    M_plus: complex
    M_minus: complex


def _gauss_ball(n_r, n_theta):
    """Gauss-Legendre nodes/weights on the unit ball in (r, theta); phi integrated out."""
    xr, wr = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * (xr + 1.0)
    wr = 0.5 * wr
    xt, wt = np.polynomial.legendre.leggauss(n_theta)
    theta = 0.5 * math.pi * (xt + 1.0)
    wt = 0.5 * math.pi * wt
    R, T = np.meshgrid(r, theta, indexing="ij")
    W = np.outer(wr * r ** 2, wt) * np.sin(T) * 2.0 * math.pi
    return R, T, W


@dataclass(frozen=True)
class WalkerMode:
    """A Walker mode with a model envelope.

    ``envelope`` is either a key of :data:`ENVELOPES` or a callable
    ``f(rho, z) -> array``; it is clipped to be non-negative and set to zero
    outside the unit sphere.
    """

    index: WalkerIndex
    omega_m: float
    envelope: object = "uniform"
    _norm: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.envelope, str) and self.envelope not in ENVELOPES:
            raise ValueError(f"unknown envelope id {self.envelope!r}; "
                             f"choose from {sorted(ENVELOPES)}")
        R, T, W = _gauss_ball(40, 40)
        raw = self._raw(R * np.sin(T), R * np.cos(T))
        object.__setattr__(self, "_norm", float(np.sqrt(np.sum(W * raw ** 2))))

    @classmethod
    def synthetic(cls, L_z, omega_m=0.0, envelope="vortex"):
        """Mode whose winding equals ``L_z``; index is the smallest valid one."""
        m_mag = 1 - int(L_z)
        return cls(WalkerIndex(max(1, abs(m_mag)), m_mag, 0), omega_m, envelope)

    @property
    def L_z(self):
        return walker_oam(self.index.m_mag)

    @property
    def envelope_id(self):
        return self.envelope if isinstance(self.envelope, str) else "custom"

    def _raw(self, rho, z):
        rho = np.asarray(rho, dtype=float)
        z = np.asarray(z, dtype=float)
        fn = ENVELOPES[self.envelope] if isinstance(self.envelope, str) else (
            lambda a, b, _lz: self.envelope(a, b))
        vals = np.asarray(fn(rho, z, self.L_z), dtype=float)
        inside = rho ** 2 + z ** 2 <= 1.0
        return np.where(inside, np.clip(vals, 0.0, None), 0.0)

    def envelope_at(self, rho, z):
        """Normalized envelope M_perp(rho, z); zero outside the sphere."""
        raw = self._raw(rho, z)
        if self._norm == 0.0:
            return raw
        return raw / self._norm

    def magnetization(self, r, theta, phi, t_phase=0.0):
        """M_+ and M_- at spherical points (r in sphere radii).

        ``t_phase`` is omega_m * t; M_+ carries exp(-i t_phase).
        """
        r, theta, phi = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float),
                                            np.asarray(phi, float))
        amp = self.envelope_at(r * np.sin(theta), r * np.cos(theta))
        m_plus = amp * np.exp(-1j * (self.L_z * phi + t_phase))
        return TransverseMagnetization(m_plus[()], np.conj(m_plus)[()])


def magnetization_field(mode, point, t_phase=0.0):
    """Transverse magnetization of ``mode`` at ``point = (r, theta, phi)``."""
    r, theta, phi = point
    return mode.magnetization(r, theta, phi, t_phase)


def extract_winding(mode, rho, z, samples=64):
    """Winding number of M_+ around the horizontal circle (rho, z).

    The unwrapped phase of M_+ accumulated over one turn, divided by -2 pi.
    """
    if samples < 16:
        raise ValueError("need at least 16 samples around the circle")
    phi = np.linspace(0.0, 2.0 * math.pi, samples + 1)
    r = math.hypot(rho, z)
    theta = math.atan2(rho, z)
    m_plus = mode.magnetization(r, theta, phi).M_plus
    if np.min(np.abs(m_plus)) < 1e-12:
        raise DegenerateEnvelopeError(
            f"envelope vanishes on the circle rho={rho}, z={z}; winding undefined")
    phase = np.unwrap(np.angle(m_plus))
    total = phase[-1] - phase[0]
    winding = round(total / (-2.0 * math.pi))
    if abs(total + 2.0 * math.pi * winding) > 0.1:
        raise WindingInconsistencyError(
            f"accumulated phase {total:.4f} rad is not a multiple of 2 pi")
    return int(winding)


def oam_volume_integral(mode, n_r=32, n_theta=32, n_phi=64):
    """Norm-weighted volume integral of the OAM density -d(arg M_+)/d(phi).

    The azimuthal derivative is taken spectrally on a uniform phi grid, so
    the result is exact (up to quadrature error) for windings |L_z| < n_phi/2.
    """
    R, T, W = _gauss_ball(n_r, n_theta)
    phi = 2.0 * math.pi * np.arange(n_phi) / n_phi
    m_plus = mode.magnetization(R[..., None], T[..., None], phi).M_plus
    k = np.fft.fftfreq(n_phi, d=1.0 / n_phi)
    dphi = np.fft.ifft(1j * k * np.fft.fft(m_plus, axis=-1), axis=-1)
    density = -np.imag(np.conj(m_plus) * dphi).mean(axis=-1)
    norm = (np.abs(m_plus) ** 2).mean(axis=-1)
    total = np.sum(W * norm)
    if total == 0.0:
        raise ZeroNormError("magnetization has zero norm; OAM undefined")
    return float(np.sum(W * density) / total)


FIG2_MODES = (
    (WalkerIndex(1, 1, 0), "uniform"),
    (WalkerIndex(3, -1, 1), "vortex_dome"),
    (WalkerIndex(3, 1, 1), "dome"),
    (WalkerIndex(4, 0, 1), "vortex_dome"),
)


def default_catalog(omega_m=2 * math.pi * 5e9):
    """The four Walker modes drawn in the equatorial-texture figure."""
    return [WalkerMode(idx, omega_m, env) for idx, env in FIG2_MODES]


def catalog_from_records(records):
    """Build modes from dicts with keys n, m_mag, r, omega_m_hz, envelope_id."""
    modes = []
    for rec in records:
        idx = WalkerIndex(int(rec["n"]), int(rec["m_mag"]), int(rec.get("r", 0)))
        modes.append(WalkerMode(idx, 2 * math.pi * float(rec["omega_m_hz"]),
                                rec.get("envelope_id", "uniform")))
    return modes
