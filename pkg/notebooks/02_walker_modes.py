"""
Walker modes and their orbital angular momentum
===============================================

A Walker mode (n, m_mag, r) carries a transverse magnetization that winds
around the magnetization axis as exp(-i L_z phi) with L_z = -(m_mag - 1).
Three independent readings of L_z are compared for the four modes of the
equatorial-texture catalog: the index formula, the phase winding along a
circle, and the volume integral of the OAM density.
"""

import math

import numpy as np

from magnonbls.walker import (default_catalog, extract_winding, oam_volume_integral,
                              walker_oam, WalkerMode)

for mode in default_catalog():
    idx = mode.index
    print(f"{idx.label():>11}  envelope={mode.envelope_id:<12}"
          f"  L_z={walker_oam(idx.m_mag):+d}"
          f"  winding={extract_winding(mode, 0.5, 0.0):+d}"
          f"  integral={oam_volume_integral(mode):+.6f}")

# phase of M_+ around the equator for the (3,1bar,1) mode: two turns backwards
mode = WalkerMode.synthetic(2, envelope="vortex_dome")
phi = np.linspace(0, 2 * math.pi, 9)
phase = np.unwrap(np.angle(mode.magnetization(0.5, math.pi / 2, phi).M_plus))
print("unwrapped phase / pi:", np.round(phase / math.pi, 3))
