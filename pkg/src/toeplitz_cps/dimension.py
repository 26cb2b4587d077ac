"""Box-counting dimension of the odometer and of the window boundary.

With cylinder diameters ``d_l`` the ambient ratio at level ``l`` is
``log p_l / -log d_l``.  The boundary is covered by exactly
``N(l) = (1 - D(p_l)) p_l`` level-``l`` cylinders and by no fewer, so its
raw ratio is ``log N(l) / -log d_l``; this factors as

    raw = (1 + log(1 - D(p_l)) / log p_l) * ambient = slope * ambient.

Upper and lower box dimensions are limsup/liminf of these ratios.  At finite
depth they are reported as the sup/inf over a tail window of levels; nothing
is extrapolated.

Logs are taken at 50 significant digits from exact integers.  When both
arguments are integer powers of a common base the ratio is also returned as
an exact :class:`~fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction

from .odometer import Metric, Scale, diameter
from .skeleton import Regularity, Skeleton, regularity

PRECISION = 50


def _ln(x: Fraction) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = PRECISION + 10
        return Decimal(x.numerator).ln() - Decimal(x.denominator).ln()


def _ratio(num: Decimal, den: Decimal) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = PRECISION
        return +(num / den)


def iroot(n: int, k: int) -> int:
    """Floor of the ``k``-th root of ``n >= 0``."""
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def perfect_power(n: int) -> tuple[int, int]:
    """``(c, e)`` with ``n = c**e`` and ``e`` maximal, for ``n >= 2``."""
    for e in range(n.bit_length(), 1, -1):
        c = iroot(n, e)
        if c > 1 and c ** e == n:
            return c, e
    return n, 1


def exact_log_ratio(a: Fraction, b: Fraction) -> Fraction | None:
    """``log a / log b`` as a fraction when it is rational for a simple reason.

    Handles positive integers (or their reciprocals) that are powers of a
    common base; returns ``None`` otherwise.
    """
    a, b = Fraction(a), Fraction(b)
    sa, sb = 1, 1
    if a.numerator == 1 and a.denominator > 1:
        a, sa = 1 / a, -1
    if b.numerator == 1 and b.denominator > 1:
        b, sb = 1 / b, -1
    if a.denominator != 1 or b.denominator != 1 or b == 1 or a <= 0:
        return None
    if a == 1:
        return Fraction(0)
    ca, ea = perfect_power(a.numerator)
    cb, eb = perfect_power(b.numerator)
    if ca != cb:
        return None
    return Fraction(sa * ea, sb * eb)


@dataclass(frozen=True)
class DimRow:
    level: int
    period: int
    cover: int | None
    diameter: Fraction
    ambient: Decimal
    ambient_exact: Fraction | None
    raw: Decimal | None = None
    raw_exact: Fraction | None = None
    slope: Decimal | None = None
    slope_exact: Fraction | None = None


@dataclass(frozen=True)
class TailSummary:
    start: int
    sup: Decimal
    inf: Decimal


@dataclass(frozen=True)
class DimReport:
    kind: str
    rows: tuple[DimRow, ...]
    tail_start: int
    tails: dict = field(default_factory=dict)
    hypothesis_ok: bool = True
    note: str = ""

    def column(self, name: str) -> list:
        return [getattr(r, name) for r in self.rows]


def tail_extremes(rows, name: str, start: int) -> TailSummary:
    vals = [getattr(r, name) for r in rows if r.level >= start]
    if not vals:
        raise ValueError(f"no rows at or beyond level {start}")
    return TailSummary(start, max(vals), min(vals))


def _ambient_row(scale: Scale, metric: Metric, level: int) -> DimRow:
    d = diameter(scale, level, metric)
    if d >= 1:
        raise ValueError(f"diameter d_{level} = {d} is not below 1")
    p = scale.p(level)
    amb = _ratio(_ln(Fraction(p)), _ln(1 / d))
    return DimRow(level, p, None, d, amb, exact_log_ratio(Fraction(p), 1 / d))


def _default_start(lmax: int) -> int:
    return max(1, lmax // 2)


def dim_ambient(scale: Scale, metric: Metric, lmax: int,
                tail_start: int | None = None) -> DimReport:
    """Ratios ``log p_l / -log d_l`` for ``l = 1..lmax``."""
    rows = tuple(_ambient_row(scale, metric, level) for level in range(1, lmax + 1))
    start = _default_start(lmax) if tail_start is None else tail_start
    return DimReport("ambient", rows, start, {"ambient": tail_extremes(rows, "ambient", start)})


def dim_boundary(spec: Skeleton, metric: Metric, lmax: int,
                 tail_start: int | None = None) -> DimReport:
    """Covering counts and dimension ratios for the window boundary.

    The formulas assume a regular sequence; otherwise the report is still
    produced but flagged with ``hypothesis_ok=False``.
    """
    verdict = regularity(spec, lmax)
    scale = spec.scale(lmax + 1) if metric.kind == "canonical" else spec.scale(lmax)
    rows = []
    for level in range(1, lmax + 1):
        base = _ambient_row(scale, metric, level)
        n = spec.hole_count(level)
        if n == 0:
            raise ValueError(f"no boundary cylinders at level {level}: the sequence is periodic")
        p = base.period
        ln_n = _ln(Fraction(n))
        raw = _ratio(ln_n, _ln(1 / base.diameter))
        slope = _ratio(ln_n, _ln(Fraction(p)))
        rows.append(DimRow(level, p, n, base.diameter, base.ambient, base.ambient_exact,
                           raw, exact_log_ratio(Fraction(n), 1 / base.diameter),
                           slope, exact_log_ratio(Fraction(n), Fraction(p))))
    rows = tuple(rows)
    start = _default_start(lmax) if tail_start is None else tail_start
    tails = {name: tail_extremes(rows, name, start) for name in ("raw", "slope", "ambient")}
    ok = verdict.status is Regularity.REGULAR
    note = "" if ok else (
        f"hypothesis violated: regularity is {verdict.status.value}, "
        "the dimension formulas assume lim D(p_l) = 1")
    return DimReport("boundary", rows, start, tails, ok, note)
