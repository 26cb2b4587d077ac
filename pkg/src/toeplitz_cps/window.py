"""The cut-and-project window over the odometer.

For the scheme ``(Z, Omega, {(n, tau^n(0))})`` the window is the closure of
``U``, where ``U_l`` is the union of level-``l`` cylinders whose residue is a
``p_l``-periodic position carrying symbol 1 and ``V_l`` the same for symbol
0.  Points of ``U`` lie in the interior of the window, points of ``V`` lie
outside it, and the boundary is everything else.  At a finite depth only the
first two can be certified, so boundary membership is reported as
"undetermined to depth L".
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .intervals import Interval
from .odometer import OdometerPoint, star
from .residues import BudgetExceeded, ResidueSet
from .skeleton import (
    DEFAULT_BUDGET,
    RuledSkeleton,
    Skeleton,
    Symbol,
    UndeterminedPosition,
    boundary_enclosure,
    evaluate,
    symbol_table,
)


@dataclass(frozen=True)
class WindowLevel:
    level: int
    U: ResidueSet
    V: ResidueSet
    undetermined: int

    @property
    def modulus(self) -> int:
        return self.U.modulus


def window_level(spec: Skeleton, level: int, budget: int = DEFAULT_BUDGET,
                 representation: str = "auto") -> WindowLevel:
    """``U_l``, ``V_l`` and the number ``N(l)`` of boundary-candidate cylinders.

    ``representation`` is ``"explicit"``, ``"holetree"`` or ``"auto"`` (explicit
    while ``p_l`` fits the budget).
    """
    spec.check_level(level)
    if level == 0:
        empty = ResidueSet.explicit(0, 1, [])
        return WindowLevel(0, empty, empty, 1)
    p = spec.p(level)
    explicit = representation == "explicit" or (representation == "auto" and p <= budget)
    if explicit:
        table = symbol_table(spec, level, budget)
        U = ResidueSet.explicit(level, p, np.flatnonzero(table == 1))
        V = ResidueSet.explicit(level, p, np.flatnonzero(table == 0))
        return WindowLevel(level, U, V, int((table < 0).sum()))
    if not isinstance(spec, RuledSkeleton):
        raise BudgetExceeded(
            f"p_{level} = {p} exceeds the enumeration budget {budget}; "
            "finite tables have no hole-tree form, use a ruled spec")
    U = ResidueSet.from_tree(spec.hole_tree(level, select_symbol=1))
    V = ResidueSet.from_tree(spec.hole_tree(level, select_symbol=0))
    return WindowLevel(level, U, V, spec.hole_count(level))


class Region(Enum):
    U = "U"
    V = "V"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class Membership:
    region: Region
    level: int

    @property
    def in_window(self) -> bool | None:
        return {Region.U: True, Region.V: False}.get(self.region)


def membership(point: OdometerPoint, spec: Skeleton, maxdepth: int | None = None) -> Membership:
    maxdepth = point.depth if maxdepth is None else maxdepth
    if maxdepth > point.depth:
        raise ValueError(f"point of depth {point.depth} cannot be probed to {maxdepth}")
    hit = spec.first_fill(point.digits[:maxdepth])
    if hit is None:
        return Membership(Region.UNDETERMINED, maxdepth)
    symbol, level = hit
    return Membership(Region.U if symbol == 1 else Region.V, level)


def project(spec: Skeleton, a: int, b: int, maxdepth: int | None = None) -> list[int]:
    """Integers ``n`` in ``[a, b]`` with ``tau^n(0)`` in the window."""
    maxdepth = spec.depth if maxdepth is None else maxdepth
    if a > b:
        return []
    scale = spec.scale(maxdepth)
    inside, missing = [], []
    for n in range(a, b + 1):
        m = membership(star(n, scale), spec, maxdepth)
        if m.region is Region.U:
            inside.append(n)
        elif m.region is Region.UNDETERMINED:
            missing.append(n)
    if missing:
        raise UndeterminedPosition(missing, maxdepth)
    return inside


def ones(spec: Skeleton, a: int, b: int, maxdepth: int | None = None) -> list[int]:
    """``{n in [a, b] : xi_n = 1}`` straight from the skeleton."""
    out = []
    for n in range(a, b + 1):
        r = evaluate(spec, n, maxdepth)
        if isinstance(r, Symbol) and r.value == 1:
            out.append(n)
    return out


def boundary_measure(spec: Skeleton, lmax: int) -> Interval:
    """Enclosure of the Haar measure of the window boundary.

    The upper end is ``1 - D(p_lmax)``, the measure of the cylinders still
    undecided at ``lmax``; the lower end comes from the rule's tail bound when
    it has one, else 0.
    """
    return boundary_enclosure(spec, lmax)


@dataclass(frozen=True)
class ProperVerdict:
    verified: bool
    kappa: int
    depth: int
    residue: int | None = None
    missing: Region | None = None


def _reaches(spec: Skeleton, r: int, level: int, symbol: int, maxdepth: int,
             budget: int) -> bool:
    frontier = [r]
    for j in range(level + 1, maxdepth + 1):
        step, q = spec.p(j - 1), spec.q(j)
        nxt = []
        for x in frontier:
            for t in range(q):
                c = x + t * step
                s = spec.newly_filled(j, c)
                if s == symbol:
                    return True
                if s is None:
                    nxt.append(c)
        if len(nxt) > budget:
            raise BudgetExceeded(f"hole frontier at level {j} exceeds budget {budget}")
        frontier = nxt
    return False


def properness_check(spec: Skeleton, kappa: int, maxdepth: int,
                     budget: int = DEFAULT_BUDGET) -> ProperVerdict:
    """Check to ``maxdepth`` that every level-``kappa`` cylinder outside ``V``
    meets ``U`` and every one outside ``U`` meets ``V``."""
    if kappa > maxdepth:
        raise ValueError(f"kappa {kappa} exceeds maxdepth {maxdepth}")
    spec.check_level(maxdepth)
    for r in range(spec.p(kappa)):
        if isinstance(evaluate(spec, r, kappa), Symbol):
            # the cylinder lies inside U or inside V already
            continue
        if not _reaches(spec, r, kappa, 1, maxdepth, budget):
            return ProperVerdict(False, kappa, maxdepth, r, Region.U)
        if not _reaches(spec, r, kappa, 0, maxdepth, budget):
            return ProperVerdict(False, kappa, maxdepth, r, Region.V)
    return ProperVerdict(True, kappa, maxdepth)
