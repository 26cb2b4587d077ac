"""Sets of residues mod ``p_l``, i.e. finite unions of level-``l`` cylinders.

Two representations share one interface:

* explicit: a sorted ``int64`` array of residues (only while ``p_l`` fits the
  enumeration budget);
* hole tree: per-level digit sets.  A residue with digits ``w_1..w_l`` is a
  member iff for some ``j`` the digits ``w_1..w_{j-1}`` are holes and
  ``w_j`` is selected, or (with ``include_tail``) every digit is a hole.
  Cardinalities follow from products of digit-set sizes, with no enumeration.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

_INT64_SAFE = 1 << 62


class BudgetExceeded(ValueError):
    pass


def arange(n: int, modulus: int) -> np.ndarray:
    """``arange`` in a dtype wide enough for residues below ``modulus``."""
    if modulus < _INT64_SAFE:
        return np.arange(n, dtype=np.int64)
    return np.array(range(n), dtype=object)


def as_residues(values, modulus: int) -> np.ndarray:
    dtype = np.int64 if modulus < _INT64_SAFE else object
    return np.asarray(values, dtype=dtype)


@dataclass(frozen=True)
class HoleTree:
    """Per level: base ``q``, the non-hole digits ``fills`` and ``select``.

    Holes are the complement of ``fills``; storing fills keeps deep levels
    with huge bases cheap.  ``select`` must be a subset of ``fills``.
    """

    q: tuple[int, ...]
    fills: tuple[frozenset, ...]
    select: tuple[frozenset, ...]
    include_tail: bool = False

    def __post_init__(self):
        if not len(self.q) == len(self.fills) == len(self.select):
            raise ValueError("hole tree needs one fill set and one selection per level")
        for i, (q, f, s) in enumerate(zip(self.q, self.fills, self.select), start=1):
            if not s <= f:
                raise ValueError(f"level {i}: selected digits {sorted(s - f)} are holes")
            if any(not 0 <= d < q for d in f):
                raise ValueError(f"level {i}: digit outside [0, {q})")

    @property
    def level(self) -> int:
        return len(self.q)

    @property
    def modulus(self) -> int:
        p = 1
        for q in self.q:
            p *= q
        return p

    def count(self) -> int:
        total, prefix, p = 0, 1, 1
        modulus = self.modulus
        for q, f, s in zip(self.q, self.fills, self.select):
            p *= q
            total += prefix * len(s) * (modulus // p)
            prefix *= q - len(f)
        if self.include_tail:
            total += prefix
        return total

    def __contains__(self, r: int) -> bool:
        r = int(r)
        if not 0 <= r < self.modulus:
            return False
        for q, f, s in zip(self.q, self.fills, self.select):
            r, d = divmod(r, q)
            if d in f:
                return d in s
        return self.include_tail

    def enumerate(self) -> np.ndarray:
        modulus = self.modulus
        chunks = []
        prefixes = as_residues([0], modulus)
        p = 1
        for q, f, s in zip(self.q, self.fills, self.select):
            if s:
                sel = as_residues(sorted(s), modulus)
                starts = (prefixes[:, None] + p * sel[None, :]).ravel()
                reps = modulus // (p * q)
                chunks.append((starts[:, None] + (p * q) * arange(reps, modulus)[None, :]).ravel())
            holes = as_residues([d for d in range(q) if d not in f], modulus)
            prefixes = (prefixes[:, None] + p * holes[None, :]).ravel()
            p *= q
        if self.include_tail:
            chunks.append(prefixes)
        if not chunks:
            return as_residues([], modulus)
        return np.sort(np.concatenate(chunks))

    def lift(self, extra_q) -> "HoleTree":
        extra_q = tuple(extra_q)
        empty = tuple(frozenset() for _ in extra_q)
        return HoleTree(self.q + extra_q, self.fills + empty, self.select + empty,
                        self.include_tail)


@dataclass(frozen=True, eq=False)
class ResidueSet:
    level: int
    modulus: int
    count: int
    residues: np.ndarray | None = None
    tree: HoleTree | None = None

    @classmethod
    def explicit(cls, level: int, modulus: int, residues) -> "ResidueSet":
        arr = np.unique(as_residues(residues, modulus))
        if arr.size and (arr[0] < 0 or arr[-1] >= modulus):
            raise ValueError(f"residues must lie in [0, {modulus})")
        return cls(level, modulus, int(arr.size), residues=arr)

    @classmethod
    def from_tree(cls, tree: HoleTree) -> "ResidueSet":
        return cls(tree.level, tree.modulus, tree.count(), tree=tree)

    @property
    def representation(self) -> str:
        return "explicit" if self.residues is not None else "holetree"

    @property
    def measure(self) -> Fraction:
        return Fraction(self.count, self.modulus)

    def __contains__(self, r) -> bool:
        if self.residues is not None:
            i = np.searchsorted(self.residues, r)
            return bool(i < self.residues.size and self.residues[i] == r)
        return int(r) in self.tree

    def to_array(self, budget: int | None = None) -> np.ndarray:
        if self.residues is not None:
            return self.residues
        if budget is not None and self.count > budget:
            raise BudgetExceeded(
                f"{self.count} residues mod {self.modulus} exceed the enumeration budget {budget}")
        return self.tree.enumerate()

    def lift(self, extra_q) -> "ResidueSet":
        """Preimage of this set under reduction from ``modulus * prod(extra_q)``."""
        extra_q = tuple(extra_q)
        factor = 1
        for q in extra_q:
            factor *= q
        if self.tree is not None:
            return ResidueSet.from_tree(self.tree.lift(extra_q))
        modulus = self.modulus * factor
        arr = (self.residues[:, None]
               + self.modulus * arange(factor, modulus)[None, :]).ravel()
        return ResidueSet(self.level + len(extra_q), modulus, self.count * factor,
                          residues=np.sort(arr))

    def isdisjoint(self, other: "ResidueSet") -> bool:
        self._same_modulus(other)
        a, b = self.to_array(), other.to_array()
        return not np.intersect1d(a, b, assume_unique=True).size

    def issubset(self, other: "ResidueSet") -> bool:
        self._same_modulus(other)
        a, b = self.to_array(), other.to_array()
        return bool(np.isin(a, b, assume_unique=True).all())

    def _same_modulus(self, other):
        if self.modulus != other.modulus:
            raise ValueError(f"moduli differ: {self.modulus} vs {other.modulus}")

    def __repr__(self):
        return (f"ResidueSet(level={self.level}, modulus={self.modulus}, "
                f"count={self.count}, {self.representation})")
