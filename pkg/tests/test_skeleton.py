from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toeplitz_cps.families import cyclic, generate, planted_periodic, preset
from toeplitz_cps.intervals import Interval
from toeplitz_cps.odometer import Scale
from toeplitz_cps.residues import BudgetExceeded
from toeplitz_cps.skeleton import (
    DepthError,
    Essentiality,
    InconsistentSpec,
    Regularity,
    Symbol,
    TableSkeleton,
    Undetermined,
    UndeterminedPosition,
    brute_per,
    complexity,
    density_by_enumeration,
    density_table,
    evaluate,
    fill_word,
    is_essential,
    per_set,
    regularity,
    symbol_table,
    truncate,
    word,
)

from .oracles import factors, fill_by_hand, hole_product, residues_from_word

RULER = preset("ruler-alt", 24)
FAT = preset("fat-cantor", 8)
HALF = preset("half-dim", 12)

RULER_WORD = "1110111011101010"


@st.composite
def cyclic_rules(draw, coverage=False):
    m = draw(st.integers(1, 3))
    qs, holes = [], []
    for _ in range(m):
        q = draw(st.integers(3 if coverage else 2, 5))
        pool = list(range(1, q - 1)) if coverage else list(range(q))
        h = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=len(pool) - (not coverage),
                          unique=True))
        qs.append(q)
        holes.append(sorted(h))
    return cyclic(qs, holes, 1 if coverage else None)


# -- evaluation ------------------------------------------------------------------

def test_eval_examples():
    assert evaluate(RULER, 3) == Symbol(0, 2)
    assert evaluate(RULER, 21, 5) == Undetermined(5)
    assert evaluate(RULER, -1) == Symbol(0, 2)


def test_ruler_word():
    assert "".join(map(str, word(RULER, 0, 15))) == RULER_WORD


def test_ruler_layers_by_hand():
    assert [dict(RULER.layer(level)) for level in (1, 2, 3, 4)] == [
        {0: 1}, {3: 0}, {1: 1}, {13: 0}]


def test_eval_beyond_depth():
    with pytest.raises(DepthError):
        evaluate(truncate(RULER, 4), 0, 5)


def test_double_fill_is_inconsistent():
    bad = TableSkeleton(Scale((2, 2)), {1: {0: 1}, 2: {2: 0}})
    with pytest.raises(InconsistentSpec):
        evaluate(bad, 2)
    with pytest.raises(InconsistentSpec):
        fill_word(bad, 0, 7)


@pytest.mark.parametrize("layers", [{1: {2: 1}}, {1: {0: 2}}, {3: {0: 1}}])
def test_table_rejects_bad_layers(layers):
    with pytest.raises(ValueError):
        TableSkeleton(Scale((2, 2)), layers)


@pytest.mark.parametrize("spec", [RULER, FAT, HALF], ids=["ruler", "fat", "half"])
def test_fill_word_agrees_with_eval(spec):
    depth = min(spec.depth, 6)
    a, b = -300, 300
    assert np.array_equal(fill_word(spec, a, b, depth), word(spec, a, b, depth))


@settings(max_examples=60)
@given(cyclic_rules(), st.integers(-500, 500))
def test_random_rules_against_hand_filling(rule, a):
    depth = 6
    spec = generate(rule, depth)
    expected = fill_by_hand(rule.base, lambda l: set(range(rule.base(l))) - rule.fills(l),
                            depth, a, a + 200)
    assert np.array_equal(word(spec, a, a + 200), expected)
    assert np.array_equal(fill_word(spec, a, a + 200), expected)


@settings(max_examples=60)
@given(cyclic_rules(), st.integers(-10**6, 10**6), st.integers(1, 5))
def test_eval_is_periodic_where_determined(rule, n, level):
    spec = generate(rule, 8)
    r = evaluate(spec, n)
    if isinstance(r, Symbol):
        m = n + 7 * spec.p(r.level)
        assert evaluate(spec, m) == r


# -- skeletons -------------------------------------------------------------------

def test_per_set_examples():
    assert per_set(RULER, 2).to_array().tolist() == [0, 2, 3]
    assert per_set(RULER, 1).to_array().tolist() == [0]
    assert per_set(FAT, 1).to_array().tolist() == [0, 3]


@pytest.mark.parametrize("spec,level", [(RULER, 1), (RULER, 2), (FAT, 1)])
def test_per_set_examples_against_word(spec, level):
    a, b = -2048, 2048
    w = fill_word(spec, a, b, spec.depth)
    p = spec.p(level)
    assert residues_from_word(w, p, p, a) == per_set(spec, level).to_array().tolist()


def test_per_set_holetree_beyond_budget():
    s = per_set(FAT, 4, budget=1000)
    assert s.representation == "holetree"
    assert s.count == FAT.p(4) - FAT.hole_count(4)
    ref = per_set(FAT, 4)
    sample = range(0, FAT.p(4), 37)
    assert [r in s for r in sample] == [r in ref for r in sample]


def test_per_set_nested_under_lift():
    for spec in (RULER, HALF):
        for level in range(1, 6):
            lo = per_set(spec, level).lift([spec.q(level + 1)])
            assert lo.issubset(per_set(spec, level + 1))


def test_table_beyond_budget():
    with pytest.raises(BudgetExceeded):
        per_set(truncate(RULER, 10), 10, budget=100)


# -- densities -------------------------------------------------------------------

def test_density_examples():
    assert density_table(RULER, 3)[3].density == Fraction(7, 8)
    assert density_table(FAT, 2)[2].density == Fraction(5, 8)
    assert density_table(HALF, 4)[4].deficit == Fraction(1, 16)
    assert density_by_enumeration(FAT, 2) == Fraction(5, 8)
    assert density_by_enumeration(HALF, 4) == Fraction(15, 16)


def test_density_closed_forms():
    for level, row in enumerate(density_table(RULER, 20)):
        assert row.deficit == Fraction(1, 2 ** level)
    for row in density_table(FAT, 8):
        assert row.deficit == hole_product(FAT.rule, row.level)
    for row in density_table(HALF, 12):
        assert row.deficit == Fraction(1, 2 ** row.level)


@settings(max_examples=40)
@given(cyclic_rules())
def test_density_recurrence_matches_enumeration(rule):
    spec = generate(rule, 30)
    for row in density_table(spec, 30):
        if row.period > 1 << 14:
            break
        assert row.density == density_by_enumeration(spec, row.level)
        assert row.deficit == hole_product(rule, row.level)


# -- essential periods -----------------------------------------------------------

def test_essential_examples():
    assert is_essential(RULER, 2).status is Essentiality.ESSENTIAL
    v = is_essential(planted_periodic(), 2)
    assert v.status is Essentiality.NOT_ESSENTIAL and v.witness == 2
    assert is_essential(RULER, 0).status is Essentiality.ESSENTIAL
    assert is_essential(planted_periodic(), 1).status is Essentiality.ESSENTIAL


def test_essential_needs_depth():
    # the deepest level never shows its holes splitting
    v = is_essential(truncate(RULER, 4), 4)
    assert v.status is Essentiality.UNVERIFIABLE
    with pytest.raises(DepthError):
        is_essential(RULER, 5, 3)


def test_essential_beyond_budget():
    assert is_essential(FAT, 5, budget=1000).status is Essentiality.UNVERIFIABLE


# -- regularity ------------------------------------------------------------------

def test_regularity_examples():
    assert regularity(RULER, 20).status is Regularity.REGULAR
    assert regularity(HALF, 12).status is Regularity.REGULAR
    fat = regularity(preset("fat-cantor", 40), 40)
    assert fat.status is Regularity.IRREGULAR
    assert fat.boundary.within(Interval(Fraction("0.288788"), Fraction("0.288789")))
    cut = regularity(truncate(RULER, 6))
    assert cut.status is Regularity.UNDETERMINED
    assert cut.limit_density == Interval(Fraction(63, 64), 1)


# -- finite-word probes ----------------------------------------------------------

def test_brute_per_examples():
    w = np.array([int(c) for c in RULER_WORD], dtype=np.int8)
    assert brute_per(w, 2, 2).tolist() == list(range(2, 14, 2))
    assert brute_per(w, 4, 4).tolist() == [4, 6, 7, 8, 10, 11]
    const = np.ones(20, dtype=np.int8)
    assert brute_per(const, 3, 3).tolist() == list(range(3, 17))


def test_brute_per_window_too_small():
    w = np.ones(8, dtype=np.int8)
    with pytest.raises(ValueError):
        brute_per(w, 4, 4)
    with pytest.raises(ValueError):
        brute_per(np.ones(40, dtype=np.int8), 4, 2)


@settings(max_examples=40)
@given(cyclic_rules(), st.integers(1, 4))
def test_brute_per_contains_true_skeleton(rule, level):
    spec = generate(rule, 12)
    p = spec.p(level)
    if p > 512:
        return
    a = -4 * p
    w = word(spec, a, 4 * p)
    if (w < 0).any():
        return
    got = set(residues_from_word(w, p, p, a))
    assert set(per_set(spec, level).to_array().tolist()) <= got


def test_complexity_examples():
    assert complexity(RULER, 2, 0, 15) == 3
    assert complexity(RULER, 1, 0, 15) == 2
    w = fill_by_hand(lambda l: 2, lambda l: {l % 2}, 10, 0, 31)
    assert complexity(RULER, 3, 0, 31) == len(factors(w, 3)) == 5


def test_complexity_undetermined():
    with pytest.raises(UndeterminedPosition) as err:
        complexity(RULER, 2, 80, 90, 8)
    assert 85 in err.value.positions


def test_truncate_roundtrip():
    t = truncate(FAT, 3)
    assert np.array_equal(symbol_table(t, 3), symbol_table(FAT, 3))
    assert t.backend == "finite" and not t.extendable


@pytest.mark.parametrize("level", [2, 4, 6])
def test_three_periods_can_overshoot(level):
    # one hole class of the ruler shows a single symbol over 3 periods,
    # and both symbols once a fourth period is visible
    p = RULER.p(level)
    true = set(per_set(RULER, level).to_array().tolist())
    three = set(residues_from_word(fill_word(RULER, 0, 3 * p), p, p, 0))
    four = set(residues_from_word(fill_word(RULER, 0, 4 * p), p, p, 0))
    assert len(three - true) == 1 and true <= three
    assert four == true
