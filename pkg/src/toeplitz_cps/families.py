"""Parametric Toeplitz constructions and a finite-depth validator.

A :class:`HoleTreeRule` fixes, for every level ``l``, the digit base ``q_l``
and the set of *fill* digits; every other digit is a hole.  Residues whose
first ``l - 1`` digits are holes and whose ``l``-th digit is a fill digit
become periodic at level ``l``.  The hole count therefore obeys
``h_l = h_{l-1} * (q_l - |fills_l|)`` and ``1 - D(p_l) = prod |H_i| / q_i``.

Presets used throughout the tests:

``ruler-alt``   binary scale, the hole digit alternates 1, 0, 1, ...; regular
                with ``1 - D(p_l) = 2^-l``.
``fat-cantor``  ``q_l = 2^(l+1)`` with fills ``{0, q_l - 1}``; irregular,
                ``1 - lim D = prod_{i>=1} (1 - 2^-i)``.
``half-dim``    ``q = 4`` with fills ``{0, 3}``; regular, boundary slope 1/2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

import numpy as np

from .odometer import Scale
from .skeleton import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    EssentialVerdict,
    Essentiality,
    RuledSkeleton,
    Skeleton,
    TableSkeleton,
    Undetermined,
    evaluate,
    is_essential,
    symbol_table,
)


class RuleError(ValueError):
    pass


def alternating_symbol(level: int, digit: int, fills) -> int:
    """Default symbol: alternate by level parity and by the digit's rank."""
    rank = sorted(fills).index(digit)
    return (rank + level) % 2


@dataclass(frozen=True, eq=False)
class HoleTreeRule:
    family: str
    params: Mapping
    level_data: Callable[[int], tuple[int, frozenset]]
    coverage_from: int | None = 1
    vanishing: bool = False
    tail_factor: Callable[[int], Fraction] | None = None
    symbol_rule: Callable[[int, int, frozenset], int] = alternating_symbol
    _cache: dict = field(default_factory=dict, repr=False)

    def _data(self, level):
        if level < 1:
            raise RuleError(f"rules start at level 1, got {level}")
        if level not in self._cache:
            q, fills = self.level_data(level)
            self._cache[level] = (int(q), frozenset(int(d) for d in fills))
        return self._cache[level]

    def base(self, level: int) -> int:
        return self._data(level)[0]

    def fills(self, level: int) -> frozenset:
        return self._data(level)[1]

    def hole_size(self, level: int) -> int:
        q, f = self._data(level)
        return q - len(f)

    def symbol(self, level: int, digit: int) -> int:
        return self.symbol_rule(level, digit, self.fills(level))

    def check(self, depth: int):
        for level in range(1, depth + 1):
            q, fills = self._data(level)
            if q < 2:
                raise RuleError(f"level {level}: base {q} < 2")
            if any(not 0 <= d < q for d in fills):
                raise RuleError(f"level {level}: fill digit outside [0, {q})")
            if not fills:
                raise RuleError(f"level {level}: no fill digit")
            if len(fills) >= q:
                raise RuleError(f"level {level}: no hole digit left")
            if self.coverage_from is not None and level >= self.coverage_from:
                if 0 not in fills or q - 1 not in fills:
                    raise RuleError(
                        f"level {level}: holes must avoid 0 and {q - 1} from level "
                        f"{self.coverage_from} on")
            for d in fills:
                if self.symbol(level, d) not in (0, 1):
                    raise RuleError(f"level {level}: non-binary symbol for digit {d}")


def generate(rule: HoleTreeRule, depth: int) -> RuledSkeleton:
    rule.check(depth)
    return RuledSkeleton(rule, depth)


# -- families --------------------------------------------------------------------

def ruler_alt() -> HoleTreeRule:
    return HoleTreeRule(
        "ruler-alt", {},
        lambda level: (2, {(level + 1) % 2}),
        coverage_from=None, vanishing=True)


def _fat_cantor_tail(level: int) -> Fraction:
    # prod_{i>L} (1 - 2^-i) >= 1 - sum_{i>L} 2^-i
    return 1 - Fraction(1, 2 ** level)


def fat_cantor() -> HoleTreeRule:
    def data(level):
        q = 2 ** (level + 1)
        return q, {0, q - 1}
    return HoleTreeRule("fat-cantor", {}, data, coverage_from=1, tail_factor=_fat_cantor_tail)


def half_dim() -> HoleTreeRule:
    return HoleTreeRule("half-dim", {}, lambda level: (4, {0, 3}), coverage_from=1,
                        vanishing=True)


def cyclic(q, holes, coverage_from=None) -> HoleTreeRule:
    """Bases and hole sets repeating with period ``len(q)``.

    Every level keeps at least one fill digit, so the hole fraction per cycle
    is below one and the deficit ``1 - D(p_l)`` tends to zero.
    """
    q = [int(x) for x in q]
    holes = [sorted(int(d) for d in h) for h in holes]
    if not q or len(q) != len(holes):
        raise RuleError("cyclic rule needs matching non-empty 'q' and 'holes' lists")
    fills = [frozenset(range(b)) - frozenset(h) for b, h in zip(q, holes)]
    m = len(q)
    params = {"q": q, "holes": holes, "coverage_from": coverage_from}
    return HoleTreeRule("cyclic", params,
                        lambda level: (q[(level - 1) % m], fills[(level - 1) % m]),
                        coverage_from=coverage_from, vanishing=True)


FAMILIES = {
    "ruler-alt": lambda **_: ruler_alt(),
    "fat-cantor": lambda **_: fat_cantor(),
    "half-dim": lambda **_: half_dim(),
    "cyclic": cyclic,
}

PRESETS = ("ruler-alt", "fat-cantor", "half-dim")


def make_rule(family: str, params: Mapping | None = None) -> HoleTreeRule:
    try:
        factory = FAMILIES[family]
    except KeyError:
        raise RuleError(f"unknown family {family!r}; known: {sorted(FAMILIES)}") from None
    return factory(**dict(params or {}))


def preset(name: str, depth: int = 12) -> RuledSkeleton:
    return generate(make_rule(name), depth)


# -- planted counterexamples -------------------------------------------------------

def planted_periodic() -> TableSkeleton:
    """Level 2 fills both holes with 0, so the sequence is 2-periodic."""
    return TableSkeleton(Scale((2, 2)), {1: {0: 1}, 2: {1: 0, 3: 0}})


def planted_one_symbol(depth: int = 8) -> TableSkeleton:
    """Binary scale whose hole nest at -1 only ever spawns symbol 1."""
    return TableSkeleton(Scale.constant(2, depth),
                         {level: {2 ** (level - 1) - 1: 1} for level in range(1, depth + 1)})


# -- validation ------------------------------------------------------------------

PASS, FAIL, UNVERIFIABLE = "pass", "fail", "unverifiable"


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    witness: object = None
    level: int | None = None

    @property
    def ok(self) -> bool:
        return self.status != FAIL


@dataclass(frozen=True)
class ValidationReport:
    depth: int
    range: tuple[int, int]
    refinement: Check
    periodicity: tuple[Check, ...]
    coverage: Check
    essential: tuple[EssentialVerdict, ...]
    nonperiodic: Check

    def checks(self):
        yield self.refinement
        yield from self.periodicity
        yield self.coverage
        for level, v in enumerate(self.essential, start=1):
            status = {Essentiality.ESSENTIAL: PASS, Essentiality.NOT_ESSENTIAL: FAIL,
                      Essentiality.UNVERIFIABLE: UNVERIFIABLE}[v.status]
            yield Check("essential", status, v.witness, level)
        yield self.nonperiodic

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks())

    def failures(self) -> list[Check]:
        return [c for c in self.checks() if not c.ok]


def _refinement(spec: Skeleton) -> Check:
    if isinstance(spec, TableSkeleton):
        bad = spec.conflicts()
        if bad:
            level, r, j = bad[0]
            return Check("refinement", FAIL,
                         {"level": level, "residue": r, "already_filled_at": j}, level)
    return Check("refinement", PASS)


def _periodicity_table(spec, depth, budget):
    deep = symbol_table(spec, depth, budget)
    out = []
    for level in range(1, depth + 1):
        p = spec.p(level)
        cols = deep.reshape(-1, p)
        hole_here = symbol_table(spec, level, budget) < 0
        if level == depth:
            status = UNVERIFIABLE if hole_here.any() else PASS
            out.append(Check("periodicity", status, None, level))
            continue
        has0 = (cols == 0).any(axis=0)
        has1 = (cols == 1).any(axis=0)
        open_ = (cols < 0).any(axis=0)
        mixed = has0 & has1
        failing = np.flatnonzero(hole_here & ~mixed & ~open_)
        unsure = np.flatnonzero(hole_here & ~mixed & open_)
        if failing.size:
            out.append(Check("periodicity", FAIL, int(failing[0]), level))
        elif unsure.size:
            out.append(Check("periodicity", UNVERIFIABLE, int(unsure[0]), level))
        else:
            out.append(Check("periodicity", PASS, None, level))
    return out


def _periodicity_ruled(spec: RuledSkeleton, depth):
    # Symbols depend only on (level, digit), so every hole at a level sees
    # the same symbols among its descendants and holes never run out.
    out = []
    for level in range(1, depth + 1):
        seen = {spec.symbol(j, d) for j in range(level + 1, depth + 1) for d in spec.fills(j)}
        out.append(Check("periodicity", PASS if len(seen) == 2 else UNVERIFIABLE, None, level))
    return out


def validate(spec: Skeleton, depth: int | None = None, a: int = -100, b: int = 100,
             budget: int = DEFAULT_BUDGET) -> ValidationReport:
    depth = spec.depth if depth is None else depth
    spec.check_level(depth)

    refinement = _refinement(spec)

    if refinement.ok and spec.p(depth) <= budget:
        periodicity = _periodicity_table(spec, depth, budget)
    elif isinstance(spec, RuledSkeleton):
        periodicity = _periodicity_ruled(spec, depth)
    elif not refinement.ok:
        periodicity = [Check("periodicity", UNVERIFIABLE, "inconsistent layers")]
    else:
        raise BudgetExceeded(f"p_{depth} = {spec.p(depth)} exceeds budget {budget}")

    uncovered = [n for n in range(a, b + 1)
                 if isinstance(evaluate(spec, n, depth), Undetermined)] if refinement.ok else []
    coverage = Check("coverage", FAIL if uncovered else PASS, uncovered or None)

    essential = tuple(is_essential(spec, level, depth, budget) if refinement.ok
                      else EssentialVerdict(Essentiality.UNVERIFIABLE)
                      for level in range(1, depth + 1))

    empty = [level for level in range(1, depth + 1) if spec.hole_count(level) == 0]
    nonperiodic = Check("nonperiodic", FAIL if empty else PASS,
                        empty[0] if empty else None, empty[0] if empty else None)

    return ValidationReport(depth, (a, b), refinement, tuple(periodicity), coverage,
                            essential, nonperiodic)
