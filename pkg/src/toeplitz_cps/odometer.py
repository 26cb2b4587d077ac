"""Mixed-radix arithmetic on truncated odometer groups.

An odometer with scale ``(q_1, q_2, ...)`` is the product of the cyclic
groups ``Z/q_l`` with carry-over addition.  Everything here works at an
explicit finite depth ``L``: points are digit tuples of length ``L`` and
arithmetic is exact modulo ``p_L = q_1 * ... * q_L``.

Level-``l`` cylinders ``[w_1, ..., w_l]`` are in bijection with residues
``k mod p_l`` via ``k = sum w_i p_{i-1}``; all measures use the convention
that such a cylinder has Haar measure ``1/p_l``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class ScaleMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Scale:
    """Digit bases ``q_1..q_L`` of a truncated odometer."""

    q: tuple[int, ...]

    def __post_init__(self):
        q = tuple(int(x) for x in self.q)
        if any(x < 2 for x in q):
            raise ValueError(f"every digit base must be >= 2, got {q}")
        object.__setattr__(self, "q", q)
        p = [1]
        for x in q:
            p.append(p[-1] * x)
        object.__setattr__(self, "_p", tuple(p))

    @classmethod
    def constant(cls, base: int, depth: int) -> "Scale":
        return cls((base,) * depth)

    @property
    def depth(self) -> int:
        return len(self.q)

    @property
    def periods(self) -> tuple[int, ...]:
        """``(p_0, p_1, ..., p_L)`` with ``p_0 = 1``."""
        return self._p

    def p(self, level: int) -> int:
        if not 0 <= level <= self.depth:
            raise ValueError(f"level {level} outside scale depth {self.depth}")
        return self._p[level]

    def base(self, level: int) -> int:
        """``q_level`` (levels are 1-based)."""
        if not 1 <= level <= self.depth:
            raise ValueError(f"level {level} outside scale depth {self.depth}")
        return self.q[level - 1]

    def truncate(self, depth: int) -> "Scale":
        if depth > self.depth:
            raise ValueError(f"cannot truncate depth {self.depth} scale to {depth}")
        return Scale(self.q[:depth])

    def cylinder_measure(self, level: int) -> Fraction:
        return Fraction(1, self.p(level))


@dataclass(frozen=True)
class OdometerPoint:
    scale: Scale
    digits: tuple[int, ...]

    def __post_init__(self):
        digits = tuple(int(d) for d in self.digits)
        if len(digits) != self.scale.depth:
            raise ValueError(
                f"point has {len(digits)} digits but scale depth is {self.scale.depth}")
        for i, (d, q) in enumerate(zip(digits, self.scale.q), start=1):
            if not 0 <= d < q:
                raise ValueError(f"digit {d} at level {i} outside [0, {q})")
        object.__setattr__(self, "digits", digits)

    @classmethod
    def zero(cls, scale: Scale) -> "OdometerPoint":
        return cls(scale, (0,) * scale.depth)

    @property
    def depth(self) -> int:
        return len(self.digits)

    @property
    def value(self) -> int:
        """The residue ``k(L, omega)`` in ``[0, p_L)`` defining this point."""
        return k_of(self.scale, self.depth, self.digits)

    def prefix(self, level: int) -> tuple[int, ...]:
        return self.digits[:level]

    def __add__(self, other: "OdometerPoint") -> "OdometerPoint":
        return add(self, other)

    def __neg__(self) -> "OdometerPoint":
        return star(-self.value, self.scale)


def add(a: OdometerPoint, b: OdometerPoint) -> OdometerPoint:
    """Digitwise sum with carry; the carry out of the last digit is dropped."""
    if a.scale != b.scale:
        raise ScaleMismatch(f"cannot add points over {a.scale.q} and {b.scale.q}")
    out = []
    carry = 0
    for x, y, q in zip(a.digits, b.digits, a.scale.q):
        carry, d = divmod(x + y + carry, q)
        out.append(d)
    return OdometerPoint(a.scale, tuple(out))


def rotate(point: OdometerPoint, times: int = 1) -> OdometerPoint:
    """Apply the odometer rotation (add ``(1, 0, 0, ...)``) ``times`` times."""
    return add(point, star(times, point.scale))


def star(n: int, scale: Scale) -> OdometerPoint:
    """``tau^n(0)``: the digits of ``n mod p_L``.  Negative ``n`` wraps."""
    return OdometerPoint(scale, digits_of(scale, n % scale.p(scale.depth), scale.depth))


def k_of(scale: Scale, level: int, w: Sequence[int]) -> int:
    if len(w) != level:
        raise ValueError(f"expected {level} digits, got {len(w)}")
    if level > scale.depth:
        raise ValueError(f"level {level} outside scale depth {scale.depth}")
    k = 0
    for i, d in enumerate(w):
        q = scale.q[i]
        if not 0 <= d < q:
            raise ValueError(f"digit {d} at level {i + 1} outside [0, {q})")
        k += d * scale.periods[i]
    return k


def digits_of(scale: Scale, k: int, level: int) -> tuple[int, ...]:
    if level > scale.depth:
        raise ValueError(f"level {level} outside scale depth {scale.depth}")
    if not 0 <= k < scale.p(level):
        raise ValueError(f"residue {k} outside [0, {scale.p(level)})")
    out = []
    for q in scale.q[:level]:
        k, d = divmod(k, q)
        out.append(d)
    return tuple(out)


@dataclass(frozen=True)
class Metric:
    """Cylinder diameters ``d_l``.

    ``Metric.canonical()`` uses ``d_l = 1/p_{l+1}``; ``Metric.custom(ds)`` takes
    explicit rationals ``d_0, d_1, ...`` that must be positive and strictly
    decreasing.  Tending to zero cannot be checked on a finite list.
    """

    kind: str = "canonical"
    values: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if self.kind not in ("canonical", "custom"):
            raise ValueError(f"unknown metric kind {self.kind!r}")
        vals = tuple(Fraction(v) for v in self.values)
        if self.kind == "custom":
            if not vals:
                raise ValueError("custom metric needs at least one diameter")
            if any(v <= 0 for v in vals):
                raise ValueError("diameters must be positive")
            if any(b >= a for a, b in zip(vals, vals[1:])):
                raise ValueError("diameters must be strictly decreasing")
        object.__setattr__(self, "values", vals)

    @classmethod
    def canonical(cls) -> "Metric":
        return cls("canonical")

    @classmethod
    def custom(cls, values: Sequence) -> "Metric":
        return cls("custom", tuple(values))


def diameter(scale: Scale, level: int, metric: Metric) -> Fraction:
    if level < 0:
        raise ValueError("level must be nonnegative")
    if metric.kind == "canonical":
        if level + 1 > scale.depth:
            raise ValueError(
                f"canonical diameter at level {level} needs p_{level + 1}, "
                f"scale depth is {scale.depth}")
        return Fraction(1, scale.p(level + 1))
    if level >= len(metric.values):
        raise ValueError(f"custom metric only defines d_0..d_{len(metric.values) - 1}")
    return metric.values[level]
