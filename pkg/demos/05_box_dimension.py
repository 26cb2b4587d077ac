"""
Box dimension of the boundary
=============================

With cylinder diameters d_l the boundary needs exactly N(l) cylinders of
level l, which gives ratios log N(l) / -log d_l.  These split as a slope
term times the ambient ratio log p_l / -log d_l.
"""

from toeplitz_cps import Metric, dim_ambient, dim_boundary, preset

canon = Metric.canonical()
half = preset("half-dim", 21)
rep = dim_boundary(half, canon, 20)
for r in rep.rows[::4]:
    print(f"l={r.level:2d}  N={r.cover:>8d}  raw={r.raw_exact}  slope={r.slope_exact}"
          f"  ambient={r.ambient_exact}")

###############################################################################
# Finite depth only allows sup/inf over a tail of levels.  The raw ratio
# creeps towards 1/2 like l / (2l + 2).

print({name: (str(t.inf)[:8], str(t.sup)[:8]) for name, t in rep.tails.items()})

###############################################################################
# A different metric changes the ambient dimension of the odometer itself.

from fractions import Fraction

slow = Metric.custom([Fraction(1, 2 ** i) for i in range(22)])
print([str(r.ambient_exact) for r in dim_ambient(half.scale(21), slow, 20).rows[:5]])

###############################################################################
# The formulas assume regularity, so fat-cantor gets flagged.

print(dim_boundary(preset("fat-cantor", 9), canon, 8).note)
