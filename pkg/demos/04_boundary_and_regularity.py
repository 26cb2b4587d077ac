"""
How big is the boundary?
========================

The window boundary is covered by the cylinders that are still open at
level l, so its Haar measure is the limit of 1 - D(p_l).  Upper bounds are
exact at every level; a lower bound needs information about the tail.
"""

from toeplitz_cps import boundary_measure, preset, regularity
from toeplitz_cps.intervals import to_decimal

fat = preset("fat-cantor", 40)

for lmax in (5, 10, 20, 40):
    iv = boundary_measure(fat, lmax)
    print(f"lmax={lmax:2d}  [{to_decimal(iv.lo, 16)}, {to_decimal(iv.hi, 16)}]")

###############################################################################
# A positive lower bound proves the sequence irregular.  The two regular
# presets carry a certificate that the open fraction goes to zero.

for name in ("ruler-alt", "half-dim", "fat-cantor"):
    v = regularity(preset(name, 40), 40)
    print(f"{name:10s} {v.status.value}")

###############################################################################
# Truncating to a finite table throws the certificate away, and the
# classifier says so instead of guessing.

from toeplitz_cps.skeleton import truncate

print(regularity(truncate(preset("ruler-alt", 6), 6)))
