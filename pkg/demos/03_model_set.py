"""
The sequence as a model set
===========================

The window lives in the odometer: its interior is the union U of cylinders
whose residue is filled with 1, its exterior V the cylinders filled with 0.
An integer n belongs to the model set when tau^n(0) lands in the window.
"""

from toeplitz_cps import membership, preset, project, star, window_level
from toeplitz_cps.window import ones

fat = preset("fat-cantor", 32)

###############################################################################
# U_l, V_l and the number of still undecided cylinders.  Beyond the
# enumeration budget the sets are kept as hole trees and only counted.

for level in range(0, 7):
    w = window_level(fat, level)
    print(f"l={level}  p={w.modulus:>12d}  |U|={w.U.count:>10d}  |V|={w.V.count:>10d}"
          f"  N={w.undetermined:>10d}  ({w.U.representation})")

###############################################################################
# Membership of a single point is decided by walking its digits until a
# filled cylinder appears.

for n in (0, 5, 37, -1):
    m = membership(star(n, fat.scale(8)), fat, 8)
    print(n, m.region.value, "at level", m.level)

###############################################################################
# The model set coincides with the positions of 1s.

lam = project(fat, -2000, 2000)
print(len(lam), "points; equal to the 1s of the word:", lam == ones(fat, -2000, 2000))
