"""
Arithmetic on the odometer
==========================

An odometer is a product of cyclic groups Z/q_1 x Z/q_2 x ... whose addition
carries from left to right, like a mileage counter with mixed radices.
"""

from toeplitz_cps import OdometerPoint, Scale, add, digits_of, k_of, star

scale = Scale((4, 8))
print("periods p_l:", scale.periods)

###############################################################################
# Carries move right and the last one falls off the end.

a = OdometerPoint(scale, (3, 5))
b = OdometerPoint(scale, (1, 2))
print(a.digits, "+", b.digits, "=", add(a, b).digits)

###############################################################################
# Integers embed through n -> tau^n(0).  Negative integers get the
# "all digits high" expansions.

for n in (0, 1, 5, 37, -1):
    print(f"star({n:3d}) = {star(n, scale).digits}")

###############################################################################
# A prefix of length l names the cylinder of points sharing it, and the
# residue k(l, w) mod p_l picks out the same cylinder from the integers.

w = (1, 7)
k = k_of(scale, 2, w)
print("k(2, (1,7)) =", k, " back to digits:", digits_of(scale, k, 2))
print("star(k) starts with w:", star(k, scale).prefix(2) == w)
