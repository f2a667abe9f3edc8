"""
OAM-conserving selection rules
==============================

A TE photon scatters into the TM mode of the same orbit; the magnon's
orbital angular momentum must be absorbed by the change of azimuthal
index.  Below: the four rules, and the channels open to a CW and a CCW
photon for magnons of OAM 0, 1 and 2.
"""

from magnonbls.brillouin import Process, allowed_m_tm, output_component
from magnonbls.wgm import Orbit
from magnonbls.walker import walker_oam

m_te = 100
for m_mag in (1, 0, -1):
    print(f"m_mag={m_mag:+d} (OAM {walker_oam(m_mag)})")
    for orbit in Orbit:
        for process in Process:
            m_tm = allowed_m_tm(orbit, process, m_te, m_mag)
            comp = output_component(orbit, process)
            print(f"   {orbit.value:>3} {process.value:<10} -> TM m={m_tm} ({comp.value})")
