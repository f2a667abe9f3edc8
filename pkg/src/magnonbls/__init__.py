"""Brillouin light scattering by magnons in a ferromagnetic sphere.

Whispering-gallery modes, Walker modes, their orbital angular momentum, the
resulting selection rules and CW/CCW nonreciprocity spectra.
"""
from .errors import *  # noqa: F401,F403
from .specfun import (Bracket, find_root, riccati_psi, spherical_bessel_j,
                      spherical_bessel_j_derivative, spherical_bessel_y)
from .walker import (WalkerIndex, WalkerMode, default_catalog, extract_winding,
                     magnetization_field, oam_volume_integral, walker_oam)
from .wgm import (Component, Orbit, Polarization, SphereGeometry, WgmIndex, angular_momenta,
                  birefringence_ratio, fsr, geometric_birefringence, inner_outer_decompose,
                  inner_outer_recompose, peak_radius, resonance_frequency,
                  resonance_size_parameter, solve_mode, wgm_oam, wgm_spin, wgm_total_j)
from .brillouin import (YIG, MaterialParams, Process, ScatteringChannel, allowed_m_tm,
                        azimuthal_overlap, coupling_amplitude, delta_L, enumerate_channels,
                        permittivity_tensor_cartesian, permittivity_tensor_spherical)
from .spectra import (ScatteringScenario, Spectrum, Verdict, channel_intensity, figure4_suite,
                      lorentzian_dos, run_scenario)

__version__ = "0.1.0"
