"""
Building Toeplitz words from hole trees
=======================================

A hole-tree rule chooses, level by level, which digits get filled and which
are left as holes.  Filling is periodic with period p_l, so the word is
assembled from arithmetic progressions.
"""

from toeplitz_cps import density_table, is_essential, per_set, preset
from toeplitz_cps.skeleton import word

ruler = preset("ruler-alt", 12)
print("".join(map(str, word(ruler, 0, 47))))

###############################################################################
# What each level adds.  Residues are mod p_l.

for level in range(1, 5):
    print(level, ruler.p(level), dict(ruler.layer(level)))

###############################################################################
# The p_l-skeleton and its density.  For ruler-alt exactly one class stays
# open per level, so 1 - D(p_l) = 2^-l.

print("Per(p_2) =", per_set(ruler, 2).to_array().tolist())
for row in density_table(ruler, 6):
    print(f"l={row.level}  D={row.density}  1-D={row.deficit}")

###############################################################################
# The three presets side by side.  fat-cantor leaves a positive fraction of
# residues open forever; the other two do not.

for name in ("ruler-alt", "fat-cantor", "half-dim"):
    rows = density_table(preset(name, 8), 8)
    print(f"{name:10s}", " ".join(f"{float(r.deficit):.4f}" for r in rows[1:]))

###############################################################################
# Essential periods: no smaller period gives the same skeleton.

print([is_essential(ruler, level).status.value for level in range(1, 6)])
