"""
Whispering-gallery modes of a dielectric sphere
===============================================

Resonances of a sphere with n = 2.19 (YIG) and R = 0.5 mm: free spectral
range, the TM-TE offset (geometric birefringence), and the equatorial
profile of a TM mode, whose two circular components peak at different
radii (the optical spin-Hall effect).
"""

import math

import numpy as np

from magnonbls.wgm import (SphereGeometry, WgmIndex, birefringence_ratio, fsr, peak_radius,
                           solve_mode, wgm_oam)

geo = SphereGeometry(0.5e-3, 2.19)
circumference_fsr = 299_792_458.0 / (2 * math.pi * geo.refractive_index * geo.radius)
for m in (100, 200):
    print(f"m={m}: FSR = {fsr(geo, m) / 2 / math.pi / 1e9:.2f} GHz "
          f"(circumference estimate {circumference_fsr / 1e9:.2f} GHz), "
          f"GB/FSR = {birefringence_ratio(geo, m):.4f}")

# inner and outer components of the fundamental TM mode
for l in (50, 100, 200):
    mode = solve_mode(geo, WgmIndex("CCW", "TM", l))
    r_i = peak_radius(mode.r, np.abs(mode.profile["E_i"]) ** 2)
    r_o = peak_radius(mode.r, np.abs(mode.profile["E_o"]) ** 2)
    print(f"l={l}: |E_i|^2 peaks at r/R={r_i:.4f}, |E_o|^2 at r/R={r_o:.4f}")

# orbital angular momentum of each component, m = 10
for orbit in ("CCW", "CW"):
    print(orbit, [wgm_oam(orbit, p, c, 10) for p, c in
                  (("TE", "none"), ("TM", "inner"), ("TM", "outer"))])
