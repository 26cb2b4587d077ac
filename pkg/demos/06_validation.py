"""
Checking a construction
=======================

Hand-made layer tables can go wrong in a few ways: a class that looked open
gets filled with one symbol only, some integer is never filled, or a period
is not essential.  The validator looks for each of these and reports a
witness.
"""

from toeplitz_cps import cyclic, generate, planted_one_symbol, planted_periodic, preset, validate
from toeplitz_cps.window import properness_check


def show(rep):
    for c in rep.failures():
        print(f"  FAIL {c.name:12s} level={c.level} witness={c.witness}")
    if rep.ok:
        print("  ok")


###############################################################################
# Level 2 fills both remaining classes with 0, so the word is 2-periodic.

show(validate(planted_periodic(), 2, -20, 20))

###############################################################################
# Hole digit q-1 everywhere: -1 has all digits q-1 and is never filled.

show(validate(generate(cyclic([2], [[1]]), 10), 10, -100, 100))

###############################################################################
# ruler-alt needs depth 9 to fill every integer in [-100, 100]; 85 walks the
# hole chain for eight levels.

show(validate(preset("ruler-alt", 8), 8))
show(validate(preset("ruler-alt", 9), 9))

###############################################################################
# Properness: every open cylinder must eventually meet both U and V.

print(properness_check(preset("half-dim", 8), 2, 8))
print(properness_check(planted_one_symbol(), 1, 8))
