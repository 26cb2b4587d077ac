from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from toeplitz_cps.intervals import Interval, format_fraction, parse_fraction, to_decimal
from toeplitz_cps.residues import BudgetExceeded, HoleTree, ResidueSet, as_residues


@st.composite
def trees(draw):
    depth = draw(st.integers(1, 4))
    qs, fills, select = [], [], []
    for _ in range(depth):
        q = draw(st.integers(2, 6))
        f = frozenset(draw(st.sets(st.integers(0, q - 1), max_size=q - 1)))
        qs.append(q)
        fills.append(f)
        select.append(frozenset(draw(st.sets(st.sampled_from(sorted(f))))) if f else frozenset())
    return HoleTree(tuple(qs), tuple(fills), tuple(select), draw(st.booleans()))


def brute(tree):
    """Walk every residue's digits directly."""
    out = []
    for r in range(tree.modulus):
        x, hit = r, None
        for q, f, s in zip(tree.q, tree.fills, tree.select):
            d = x % q
            x //= q
            if d in f:
                hit = d in s
                break
        if hit or (hit is None and tree.include_tail):
            out.append(r)
    return out


@given(trees())
def test_tree_matches_brute_force(tree):
    expected = brute(tree)
    assert tree.count() == len(expected)
    assert tree.enumerate().tolist() == expected
    assert [r in tree for r in range(tree.modulus)] == [r in expected
                                                       for r in range(tree.modulus)]


@given(trees(), st.integers(2, 4))
def test_tree_lift_is_preimage(tree, q):
    lifted = tree.lift([q])
    base = set(tree.enumerate().tolist())
    assert lifted.enumerate().tolist() == [r for r in range(lifted.modulus)
                                           if r % tree.modulus in base]


def test_select_must_be_fills():
    with pytest.raises(ValueError):
        HoleTree((4,), (frozenset({0}),), (frozenset({1}),))


def test_residue_set_ops():
    a = ResidueSet.explicit(1, 4, [0, 2])
    b = ResidueSet.explicit(1, 4, [3])
    assert a.isdisjoint(b) and not a.issubset(b)
    assert a.lift([2]).to_array().tolist() == [0, 2, 4, 6]
    assert a.measure == Fraction(1, 2)
    with pytest.raises(ValueError):
        ResidueSet.explicit(1, 4, [4])
    with pytest.raises(ValueError):
        a.isdisjoint(ResidueSet.explicit(1, 8, []))


def test_tree_set_budget():
    tree = HoleTree((8, 8), (frozenset({0, 7}),) * 2, (frozenset({0, 7}),) * 2)
    s = ResidueSet.from_tree(tree)
    with pytest.raises(BudgetExceeded):
        s.to_array(budget=4)
    assert s.to_array().size == s.count == 2 * 8 + 6 * 2


def test_big_moduli_use_objects():
    arr = as_residues([0, 2 ** 70], 2 ** 71)
    assert arr.dtype == object
    assert as_residues([1, 2], 8).dtype == np.int64


def test_intervals():
    iv = Interval(Fraction(1, 4), Fraction(1, 2))
    assert Fraction(1, 3) in iv and 1 not in iv
    assert iv.complement() == Interval(Fraction(1, 2), Fraction(3, 4))
    assert iv.width == Fraction(1, 4)
    assert Interval(Fraction(1, 3), Fraction(2, 5)).within(iv)
    with pytest.raises(ValueError):
        Interval(1, 0)
    assert str(to_decimal(Fraction(1, 3), 5)) == "0.33333"
    assert format_fraction(Fraction(-6, 4)) == "-3/2"
    assert parse_fraction("3/6") == Fraction(1, 2)
