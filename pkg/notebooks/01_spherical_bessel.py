"""
Spherical Bessel functions at large order
=========================================

Whispering-gallery modes of a millimetre sphere live at multipole orders
of several thousand, where textbook recurrences overflow.  This script
checks the package's j_l and y_l against scipy, then shows the
characteristic function whose zeros are the resonances.
"""

import numpy as np
from scipy import special

from magnonbls.specfun import (spherical_bessel_j, log_abs_spherical_bessel_y,
                               scan_brackets, find_root)
from magnonbls.wgm import characteristic_function

# moderate orders: compare with scipy directly
for l, x in [(50, 60.0), (100, 120.0), (200, 250.0)]:
    ours = spherical_bessel_j(l, x)
    ref = special.spherical_jn(l, x)
    print(f"j_{l}({x:g}) = {ours:.15e}   scipy rel. diff {abs(ours / ref - 1):.1e}")

# deep inside the evanescent region y_l overflows a double, its log does not
logabs, sign = log_abs_spherical_bessel_y(4600, 1000.0)
print(f"log|y_4600(1000)| = {logabs:.6f}, sign {sign:+.0f}")

# the resonance condition for l = 50 is a smooth curve with isolated zeros
n = 2.19


def g(x):
    return characteristic_function(x, 50, n, "TE")


roots = [find_root(g, b) for b in scan_brackets(g, 50 / n, 30.0, 2000)]
print("TE l=50 size parameters in the window:", np.round(roots, 10))
