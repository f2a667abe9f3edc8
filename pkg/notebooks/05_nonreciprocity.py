"""
Nonreciprocal Brillouin spectra
===============================

The magnon frequency is tuned to FSR - GB, which puts one sideband of one
orbit exactly on a TM resonance.  Which orbit wins depends on the magnon's
OAM: the uniform Kittel mode favours CW light, an OAM-2 mode favours CCW,
and an OAM-1 mode treats both alike.  Spectra are written as SVG next to
this script's working directory.
"""

from magnonbls.brillouin import YIG
from magnonbls.export import svg_plot
from magnonbls.spectra import figure4_suite
from magnonbls.wgm import SphereGeometry

geo = SphereGeometry(0.5e-3, 2.19)
rows = figure4_suite(geo, YIG, m_TE=100)
for row in rows:
    print(f"OAM {row.oam} {row.magnon.label():>11}: I_cw/I_ccw = {row.ratio:.4g} -> "
          f"{row.verdict.value}")

# the same table with the full spatial overlap instead of unit couplings
for row in figure4_suite(geo, YIG, m_TE=100, coupling="overlap"):
    print(f"overlap coupling, OAM {row.oam}: ratio {row.ratio:.4g} ({row.verdict.value})")

sp = rows[0].result.spectrum
svg = svg_plot(sp.delta_over_fsr, {"CW": sp.intensity_cw, "CCW": sp.intensity_ccw},
               "Kittel magnon", "(omega2 - omega1) / FSR", "intensity")
with open("kittel_spectrum.svg", "w") as fh:
    fh.write(svg)
print("wrote kittel_spectrum.svg")
