"""Independent reference computations used by several test modules."""
import numpy as np

from magnonbls.brillouin import BASIS_M1, BASIS_M2, SPHERICAL_BASIS


def brute_force_coupling(te, tm, magnon, params, n=64, process="Stokes"):
    """Full 3D midpoint quadrature of the magneto-optic energy overlap.

    Builds the Cartesian fields from their spherical-basis coefficients,
    the Cartesian permittivity from the Stokes-harmonic magnetization, and
    integrates E_out^H eps E_in / 2 over (r, theta, phi) on an n^3 grid.
    ``process`` picks the magnetization harmonic: M_- (Stokes, magnon
    created) or M_+ (anti-Stokes).  Returns the result in units of epsilon_0.
    """
    r = (np.arange(n) + 0.5) / n
    th = (np.arange(n) + 0.5) * np.pi / n
    ph = np.arange(n) * 2 * np.pi / n
    R, T, P = np.meshgrid(r, th, ph, indexing="ij")

    m_plus = magnon.magnetization(R, T, P).M_plus
    if process == "Stokes":
        m_minus = np.conj(m_plus)
        mx, my = m_minus / 2, 1j * m_minus / 2
    else:
        mx, my = m_plus / 2, -1j * m_plus / 2
    eps = 1j * params.f * (mx[..., None, None] * BASIS_M1 + my[..., None, None] * BASIS_M2)

    s = te.index.orbit.sign
    m_in, m_out = te.index.m, tm.index.m
    polar_in = te.polar(th)[None, :, None]
    polar_out = tm.polar(th)[None, :, None]
    c_in = np.zeros(R.shape + (3,), complex)
    c_in[..., 1] = te.component(r, "none")[:, None, None] * polar_in * np.exp(-1j * s * m_in * P)
    e_i = tm.component(r, "inner")[:, None, None] * polar_out
    e_o = tm.component(r, "outer")[:, None, None] * polar_out
    c_out = np.zeros(R.shape + (3,), complex)
    if s == 1:
        c_out[..., 0] = e_i * np.exp(-1j * (m_out - 1) * P)
        c_out[..., 2] = -e_o * np.exp(-1j * (m_out + 1) * P)
    else:
        c_out[..., 0] = e_o * np.exp(1j * (m_out + 1) * P)
        c_out[..., 2] = -e_i * np.exp(1j * (m_out - 1) * P)

    e_in = c_in @ SPHERICAL_BASIS.T
    e_out = c_out @ SPHERICAL_BASIS.T
    integrand = 0.5 * np.einsum("...i,...ij,...j->...", e_out.conj(), eps, e_in)
    w = (1 / n) * (np.pi / n) * (2 * np.pi / n) * R ** 2 * np.sin(T)
    return complex(np.sum(integrand * w))
