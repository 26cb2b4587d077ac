"""Binary Toeplitz sequences described by layered skeletons.

A skeleton over a scale ``(q_l)`` lists, for every level ``l``, the residues
``r mod p_l`` that become periodic at that level together with their symbol.
The ``p_l``-skeleton of the sequence is the union of the lifts of layers
``1..l``; positions outside it are *holes* at level ``l``.

Two backends implement the same interface:

``TableSkeleton``
    explicit finite layers to a fixed depth.
``RuledSkeleton``
    a hole-tree rule (see :mod:`toeplitz_cps.families`) that extends to any
    depth and carries an exact hole-count recurrence.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .intervals import Interval
from .odometer import Scale
from .residues import BudgetExceeded, HoleTree, ResidueSet, as_residues

DEFAULT_BUDGET = 1 << 20


class InconsistentSpec(ValueError):
    pass


class DepthError(ValueError):
    pass


class UndeterminedPosition(ValueError):
    def __init__(self, positions, depth):
        self.positions = list(positions)
        self.depth = depth
        shown = ", ".join(map(str, self.positions[:10]))
        more = "" if len(self.positions) <= 10 else f" (+{len(self.positions) - 10} more)"
        super().__init__(f"positions undetermined at depth {depth}: {shown}{more}")


@dataclass(frozen=True)
class Symbol:
    value: int
    level: int


@dataclass(frozen=True)
class Undetermined:
    depth: int


class Skeleton:
    backend: str = ""
    depth: int = 0
    extendable: bool = False

    # subclasses provide q(level), newly_filled, first_fill, layer_arrays,
    # fill_counts

    def p(self, level: int) -> int:
        self.check_level(level)
        return self._periods(level)[level]

    def _periods(self, level):
        raise NotImplementedError

    def scale(self, depth: int | None = None) -> Scale:
        depth = self.depth if depth is None else depth
        self.check_level(depth)
        return Scale(tuple(self.q(i) for i in range(1, depth + 1)))

    def check_level(self, level: int):
        if level < 0:
            raise DepthError(f"negative level {level}")
        if not self.extendable and level > self.depth:
            raise DepthError(f"level {level} beyond table depth {self.depth}")

    def layer(self, level: int, budget: int = DEFAULT_BUDGET) -> dict[int, int]:
        res, sym = self.layer_arrays(level, budget)
        return {int(r): int(s) for r, s in zip(res, sym)}

    def filled_counts(self, level: int) -> tuple[int, int]:
        """Cumulative ``(#symbol 0, #symbol 1)`` residues mod ``p_level``."""
        p = self.p(level)
        n0 = n1 = 0
        for j in range(1, level + 1):
            c0, c1 = self.fill_counts(j)
            reps = p // self.p(j)
            n0 += c0 * reps
            n1 += c1 * reps
        return n0, n1

    def hole_count(self, level: int) -> int:
        return self.p(level) - sum(self.filled_counts(level))


class TableSkeleton(Skeleton):
    backend = "finite"
    extendable = False

    def __init__(self, scale: Scale, layers: Mapping[int, Mapping[int, int]]):
        self._scale = scale
        self.depth = scale.depth
        clean = {}
        for level, filled in layers.items():
            level = int(level)
            if not 1 <= level <= self.depth:
                raise ValueError(f"layer level {level} outside [1, {self.depth}]")
            p = scale.p(level)
            row = {}
            for r, s in filled.items():
                r, s = int(r), int(s)
                if not 0 <= r < p:
                    raise ValueError(f"residue {r} ≥ p_{level} = {p}" if r >= p
                                     else f"negative residue {r} at level {level}")
                if s not in (0, 1):
                    raise ValueError(f"symbol {s} at level {level} is not binary")
                row[r] = s
            clean[level] = MappingProxyType(row)
        for level in range(1, self.depth + 1):
            clean.setdefault(level, MappingProxyType({}))
        self.layers = MappingProxyType(clean)

    def __repr__(self):
        return f"TableSkeleton(scale={self._scale.q})"

    def q(self, level: int) -> int:
        return self._scale.base(level)

    def _periods(self, level):
        return self._scale.periods

    def scale(self, depth=None):
        return self._scale if depth is None else self._scale.truncate(depth)

    def newly_filled(self, level: int, residue: int) -> int | None:
        return self.layers[level].get(residue)

    def first_fill(self, digits) -> tuple[int, int] | None:
        periods = self._scale.periods
        k = 0
        for i, d in enumerate(digits, start=1):
            k += d * periods[i - 1]
            s = self.layers[i].get(k)
            if s is not None:
                return s, i
        return None

    def layer_arrays(self, level: int, budget: int = DEFAULT_BUDGET):
        self.check_level(level)
        row = self.layers[level]
        keys = sorted(row)
        return (as_residues(keys, self.p(level)),
                np.array([row[k] for k in keys], dtype=np.int8))

    def fill_counts(self, level: int) -> tuple[int, int]:
        row = self.layers[level]
        n1 = sum(row.values())
        return len(row) - n1, n1

    def conflicts(self):
        """Residues filled at a level where an ancestor was already filled."""
        out = []
        for level in range(2, self.depth + 1):
            for r in sorted(self.layers[level]):
                for j in range(1, level):
                    if r % self.p(j) in self.layers[j]:
                        out.append((level, r, j))
                        break
        return out


class RuledSkeleton(Skeleton):
    backend = "ruled"
    extendable = True

    def __init__(self, rule, depth: int):
        self.rule = rule
        self.depth = depth
        self._p = [1]
        self._q = []
        self._fills = []
        self._hcount = [1]

    def __repr__(self):
        return f"RuledSkeleton({self.rule.family!r}, depth={self.depth})"

    def deepen(self, depth: int) -> "RuledSkeleton":
        return RuledSkeleton(self.rule, depth)

    def _grow(self, level):
        while len(self._q) < level:
            i = len(self._q) + 1
            q = self.rule.base(i)
            fills = self.rule.fills(i)
            self._q.append(q)
            self._fills.append(fills)
            self._p.append(self._p[-1] * q)
            self._hcount.append(self._hcount[-1] * (q - len(fills)))

    def _periods(self, level):
        self._grow(level)
        return self._p

    def q(self, level: int) -> int:
        if level < 1:
            raise DepthError(f"no digit base at level {level}")
        self._grow(level)
        return self._q[level - 1]

    def fills(self, level: int) -> frozenset:
        """Digits that end the hole nest at ``level``."""
        self._grow(level)
        return self._fills[level - 1]

    def holes(self, level: int) -> tuple[int, ...]:
        """Hole digits at ``level``, enumerated (only sensible for small bases)."""
        f = self.fills(level)
        return tuple(d for d in range(self.q(level)) if d not in f)

    def symbol(self, level: int, digit: int) -> int:
        return self.rule.symbol(level, digit)

    def newly_filled(self, level: int, residue: int) -> int | None:
        self._grow(level)
        r = residue
        for i in range(1, level + 1):
            r, d = divmod(r, self._q[i - 1])
            if d in self._fills[i - 1]:
                return self.rule.symbol(i, d) if i == level else None
        return None

    def first_fill(self, digits) -> tuple[int, int] | None:
        self._grow(len(digits))
        for i, d in enumerate(digits, start=1):
            if d in self._fills[i - 1]:
                return self.rule.symbol(i, d), i
        return None

    def hole_residues(self, level: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
        if self.hole_count(level) > budget:
            raise BudgetExceeded(
                f"{self.hole_count(level)} holes at level {level} exceed budget {budget}")
        p_top = self.p(level)
        res = as_residues([0], p_top)
        for i in range(1, level + 1):
            h = as_residues(self.holes(i), p_top)
            res = (res[:, None] + self._p[i - 1] * h[None, :]).ravel()
        return res

    def layer_arrays(self, level: int, budget: int = DEFAULT_BUDGET):
        fills = sorted(self.fills(level))
        size = self._hcount[level - 1] * len(fills)
        if size > budget:
            raise BudgetExceeded(
                f"layer {level} has {size} residues, above the enumeration budget {budget}")
        prev = self.hole_residues(level - 1, budget)
        p = self.p(level)
        f = as_residues(fills, p)
        res = (prev[:, None] + self._p[level - 1] * f[None, :]).ravel()
        syms = np.array([self.symbol(level, d) for d in fills], dtype=np.int8)
        sym = np.broadcast_to(syms[None, :], (prev.size, len(fills))).ravel()
        order = np.argsort(res, kind="stable")
        return res[order], sym[order]

    def fill_counts(self, level: int) -> tuple[int, int]:
        fills = self.fills(level)
        n1 = sum(self.symbol(level, d) for d in fills)
        h = self._hcount[level - 1]
        return h * (len(fills) - n1), h * n1

    def hole_count(self, level: int) -> int:
        self.check_level(level)
        self._grow(level)
        return self._hcount[level]

    def hole_tree(self, level: int, select_symbol: int | None = None,
                  include_tail: bool = False) -> HoleTree:
        """Hole-tree form of the filled residues at ``level``.

        ``select_symbol`` restricts to residues carrying that symbol.
        """
        levels = range(1, level + 1)
        sel = tuple(frozenset(d for d in self.fills(i)
                              if select_symbol is None or self.symbol(i, d) == select_symbol)
                    for i in levels)
        return HoleTree(tuple(self.q(i) for i in levels),
                        tuple(self.fills(i) for i in levels), sel, include_tail)


# -- evaluation ----------------------------------------------------------------

def evaluate(spec: Skeleton, n: int, maxdepth: int | None = None) -> Symbol | Undetermined:
    """Symbol of position ``n`` and the least level at which it is periodic."""
    maxdepth = spec.depth if maxdepth is None else maxdepth
    spec.check_level(maxdepth)
    for level in range(1, maxdepth + 1):
        s = spec.newly_filled(level, n % spec.p(level))
        if s is not None:
            if isinstance(spec, TableSkeleton):
                for j in range(level + 1, maxdepth + 1):
                    if n % spec.p(j) in spec.layers[j]:
                        raise InconsistentSpec(
                            f"position {n} filled at level {level} and again at level {j}")
            return Symbol(s, level)
    return Undetermined(maxdepth)


def word(spec: Skeleton, a: int, b: int, maxdepth: int | None = None) -> np.ndarray:
    """Symbols at positions ``a..b`` via :func:`evaluate`; ``-1`` if undetermined."""
    out = np.full(max(b - a + 1, 0), -1, dtype=np.int8)
    for i, n in enumerate(range(a, b + 1)):
        r = evaluate(spec, n, maxdepth)
        if isinstance(r, Symbol):
            out[i] = r.value
    return out


def fill_word(spec: Skeleton, a: int, b: int, maxdepth: int | None = None,
              budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Symbols at ``a..b`` by filling arithmetic progressions layer by layer.

    This is the classical Toeplitz construction and shares no code with
    :func:`evaluate` beyond the layer enumeration.
    """
    maxdepth = spec.depth if maxdepth is None else maxdepth
    spec.check_level(maxdepth)
    n = max(b - a + 1, 0)
    out = np.full(n, -1, dtype=np.int8)
    for level in range(1, maxdepth + 1):
        if n == 0 or (out >= 0).all():
            break
        p = spec.p(level)
        res, sym = spec.layer_arrays(level, budget)
        for r, s in zip(res.tolist(), sym.tolist()):
            start = (r - a) % p
            if start >= n:
                continue
            cells = out[start::p]
            if (cells >= 0).any():
                raise InconsistentSpec(f"residue {r} mod {p} refills an earlier position")
            out[start::p] = s
    return out


def symbol_table(spec: Skeleton, level: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Array over residues mod ``p_level``: filled symbol, or ``-1`` for holes."""
    p = spec.p(level)
    if p > budget:
        raise BudgetExceeded(f"p_{level} = {p} exceeds the enumeration budget {budget}")
    table = np.full(p, -1, dtype=np.int8)
    for j in range(1, level + 1):
        res, sym = spec.layer_arrays(j, budget)
        if not res.size:
            continue
        reps = p // spec.p(j)
        pos = (res.astype(np.int64)[:, None] + spec.p(j) * np.arange(reps)[None, :]).ravel()
        if (table[pos] >= 0).any():
            raise InconsistentSpec(f"layer {j} refills residues already periodic")
        table[pos] = np.repeat(sym, reps)
    return table


# -- skeletons and densities -----------------------------------------------------

def per_set(spec: Skeleton, level: int, budget: int = DEFAULT_BUDGET) -> ResidueSet:
    """Residues mod ``p_level`` that are ``p_level``-periodic positions."""
    spec.check_level(level)
    p = spec.p(level)
    if p <= budget:
        return ResidueSet.explicit(level, p, np.flatnonzero(symbol_table(spec, level, budget) >= 0))
    if isinstance(spec, RuledSkeleton):
        return ResidueSet.from_tree(spec.hole_tree(level))
    raise BudgetExceeded(f"p_{level} = {p} exceeds budget {budget}; use a ruled spec")


@dataclass(frozen=True)
class DensityRow:
    level: int
    period: int
    filled: int
    density: Fraction
    deficit: Fraction


def density_table(spec: Skeleton, lmax: int) -> list[DensityRow]:
    spec.check_level(lmax)
    rows = []
    for level in range(0, lmax + 1):
        p = spec.p(level)
        filled = p - spec.hole_count(level)
        d = Fraction(filled, p)
        rows.append(DensityRow(level, p, filled, d, 1 - d))
    return rows


def density_by_enumeration(spec: Skeleton, level: int, budget: int = DEFAULT_BUDGET) -> Fraction:
    table = symbol_table(spec, level, budget)
    return Fraction(int((table >= 0).sum()), table.size)


# -- essential periods ----------------------------------------------------------

class Essentiality(Enum):
    ESSENTIAL = "essential"
    NOT_ESSENTIAL = "not-essential"
    UNVERIFIABLE = "unverifiable"


@dataclass(frozen=True)
class EssentialVerdict:
    status: Essentiality
    witness: int | None = None
    depth: int = 0


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_essential(spec: Skeleton, level: int, depth: int | None = None,
                 budget: int = DEFAULT_BUDGET) -> EssentialVerdict:
    """Decide whether ``p_level`` is an essential period.

    Only the maximal proper divisors ``p_level / r`` (``r`` prime) are compared:
    equal skeletons for some ``p' < p`` force equality for ``gcd(p, p')`` and
    hence for some ``p / r``.  ``Per(p/r)`` is read off the residues mod
    ``p_depth``; a class with holes at ``depth`` cannot be certified.
    """
    depth = spec.depth if depth is None else depth
    if level == 0:
        return EssentialVerdict(Essentiality.ESSENTIAL, None, 0)
    if depth < level:
        raise DepthError(f"depth {depth} below level {level}")
    spec.check_level(depth)
    p = spec.p(level)
    if p > budget:
        return EssentialVerdict(Essentiality.UNVERIFIABLE, None, level)
    periodic_here = symbol_table(spec, level, budget) >= 0
    pending = prime_factors(p)
    used = level
    for d in range(level, depth + 1):
        if spec.p(d) > budget:
            break
        used = d
        table = symbol_table(spec, d, budget)
        for r in list(pending):
            cls = p // r
            cols = table.reshape(-1, cls)
            has0 = (cols == 0).any(axis=0)
            has1 = (cols == 1).any(axis=0)
            hole = (cols < 0).any(axis=0)
            periodic = periodic_here.reshape(r, cls).any(axis=0)
            if (periodic & has0 & has1).any():
                pending.remove(r)
            elif not (periodic & (hole | (has0 & has1))).any():
                return EssentialVerdict(Essentiality.NOT_ESSENTIAL, cls, d)
        if not pending:
            return EssentialVerdict(Essentiality.ESSENTIAL, None, d)
    return EssentialVerdict(Essentiality.UNVERIFIABLE, None, used)


# -- regularity ------------------------------------------------------------------

class Regularity(Enum):
    REGULAR = "regular"
    IRREGULAR = "irregular"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class RegularityVerdict:
    status: Regularity
    limit_density: Interval
    boundary: Interval
    level: int


def boundary_enclosure(spec: Skeleton, lmax: int) -> Interval:
    """Rigorous enclosure of ``1 - lim D(p_l)`` from data up to ``lmax``."""
    spec.check_level(lmax)
    hi = Fraction(spec.hole_count(lmax), spec.p(lmax))
    lo = Fraction(0)
    rule = getattr(spec, "rule", None)
    if rule is not None and rule.tail_factor is not None:
        lo = hi * rule.tail_factor(lmax)
    return Interval(lo, hi)


def regularity(spec: Skeleton, lmax: int | None = None) -> RegularityVerdict:
    lmax = spec.depth if lmax is None else lmax
    bound = boundary_enclosure(spec, lmax)
    rule = getattr(spec, "rule", None)
    if rule is not None and rule.vanishing:
        return RegularityVerdict(Regularity.REGULAR, Interval(1, 1), Interval(0, 0), lmax)
    if bound.lo > 0:
        return RegularityVerdict(Regularity.IRREGULAR, bound.complement(), bound, lmax)
    return RegularityVerdict(Regularity.UNDETERMINED, bound.complement(), bound, lmax)


# -- finite-word probes ----------------------------------------------------------

def brute_per(w: np.ndarray, p: int, margin: int, start: int = 0) -> np.ndarray:
    """Interior positions whose visible translates by multiples of ``p`` agree.

    ``w[i]`` is the symbol at position ``start + i``.  The result
    over-approximates the ``p``-skeleton inside
    ``[start + margin, start + len(w) - 1 - margin]``.
    """
    w = np.asarray(w)
    n = w.size
    if n - 1 < 3 * p:
        raise ValueError(f"window of length {n} is too small for period {p}")
    if margin < p:
        raise ValueError(f"margin {margin} must be at least the period {p}")
    if (w < 0).any():
        raise UndeterminedPosition(start + np.flatnonzero(w < 0), None)
    pad = (-n) % p
    grid = np.concatenate([w, np.full(pad, -1, dtype=w.dtype)]).reshape(-1, p)
    valid = np.ones_like(grid, dtype=bool)
    if pad:
        valid[-1, p - pad:] = False
    big = np.where(valid, grid, -1).max(axis=0)
    small = np.where(valid, grid, 2).min(axis=0)
    constant = big == small
    idx = np.arange(margin, n - margin)
    return start + idx[constant[idx % p]]


def complexity(spec: Skeleton, n: int, a: int, b: int, maxdepth: int | None = None) -> int:
    """Number of distinct length-``n`` factors of the sequence on ``[a, b]``."""
    if b - a < n - 1 or n < 1:
        raise ValueError(f"range [{a}, {b}] too short for factors of length {n}")
    w = word(spec, a, b, maxdepth)
    bad = np.flatnonzero(w < 0)
    if bad.size:
        raise UndeterminedPosition((a + bad).tolist(), maxdepth or spec.depth)
    raw = w.tobytes()
    return len({raw[i:i + n] for i in range(len(raw) - n + 1)})


def truncate(spec: Skeleton, depth: int, budget: int = DEFAULT_BUDGET) -> TableSkeleton:
    """Explicit finite-table copy of the first ``depth`` layers."""
    return TableSkeleton(spec.scale(depth),
                         {level: spec.layer(level, budget) for level in range(1, depth + 1)})


__all__ = [
    "DEFAULT_BUDGET", "BudgetExceeded", "DensityRow", "DepthError", "EssentialVerdict",
    "Essentiality", "InconsistentSpec", "Regularity", "RegularityVerdict", "RuledSkeleton",
    "Skeleton", "Symbol", "TableSkeleton", "Undetermined", "UndeterminedPosition",
    "boundary_enclosure", "brute_per", "complexity", "density_by_enumeration", "density_table",
    "evaluate", "fill_word", "is_essential", "per_set", "prime_factors", "regularity",
    "symbol_table", "truncate", "word",
]
