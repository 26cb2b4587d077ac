"""Binary Toeplitz sequences as model sets over odometer groups."""
from .dimension import DimReport, dim_ambient, dim_boundary
from .families import (
    HoleTreeRule,
    ValidationReport,
    cyclic,
    fat_cantor,
    generate,
    half_dim,
    make_rule,
    planted_one_symbol,
    planted_periodic,
    preset,
    ruler_alt,
    validate,
)
from .intervals import Interval
from .odometer import Metric, OdometerPoint, Scale, add, diameter, digits_of, k_of, star
from .residues import HoleTree, ResidueSet
from .skeleton import (
    RuledSkeleton,
    Symbol,
    TableSkeleton,
    Undetermined,
    brute_per,
    complexity,
    density_table,
    evaluate,
    is_essential,
    per_set,
    regularity,
)
from .window import (
    Membership,
    Region,
    WindowLevel,
    boundary_measure,
    membership,
    project,
    properness_check,
    window_level,
)

__version__ = "0.1.0"
