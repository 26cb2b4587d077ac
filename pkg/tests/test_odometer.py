from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toeplitz_cps.odometer import (
    Metric,
    OdometerPoint,
    Scale,
    ScaleMismatch,
    add,
    diameter,
    digits_of,
    k_of,
    rotate,
    star,
)

S222 = Scale((2, 2, 2))
S48 = Scale((4, 8))


def pt(scale, *digits):
    return OdometerPoint(scale, tuple(digits))


scales = st.lists(st.integers(2, 7), min_size=1, max_size=6).map(lambda q: Scale(tuple(q)))


@st.composite
def points(draw, scale=None, n=1):
    scale = scale or draw(scales)
    out = [OdometerPoint(scale, tuple(draw(st.integers(0, q - 1)) for q in scale.q))
           for _ in range(n)]
    return (scale, *out)


# -- scale -----------------------------------------------------------------------

def test_periods_and_bases():
    assert S48.periods == (1, 4, 32)
    assert S48.p(0) == 1 and S48.p(2) == 32
    assert S48.base(1) == 4 and S48.base(2) == 8
    assert S48.cylinder_measure(2) == Fraction(1, 32)


@pytest.mark.parametrize("q", [(1,), (2, 0), (3, -2)])
def test_bad_scales(q):
    with pytest.raises(ValueError):
        Scale(q)


def test_level_beyond_depth():
    with pytest.raises(ValueError):
        S48.p(3)


# -- addition --------------------------------------------------------------------

def test_add_examples():
    assert add(pt(S222, 1, 1, 0), pt(S222, 1, 0, 0)) == pt(S222, 0, 0, 1)
    # 3+1 carries, then 5+2+1 = 8 wraps to 0 and the final carry is dropped
    assert add(pt(S48, 3, 5), pt(S48, 1, 2)) == pt(S48, 0, 0)
    a = pt(S48, 2, 7)
    assert add(a, OdometerPoint.zero(S48)) == a


def test_add_scale_mismatch():
    with pytest.raises(ScaleMismatch):
        add(pt(S48, 0, 0), pt(Scale((4, 4)), 0, 0))


def test_digit_out_of_bounds():
    with pytest.raises(ValueError):
        pt(S48, 4, 0)
    with pytest.raises(ValueError):
        pt(S48, 0)


@given(points(n=3))
def test_add_is_abelian_group(data):
    _, a, b, c = data
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a + (-a) == OdometerPoint.zero(a.scale)


@given(points(n=2))
def test_add_matches_integer_addition_mod_p(data):
    scale, a, b = data
    assert (a + b).value == (a.value + b.value) % scale.p(scale.depth)


# -- star map --------------------------------------------------------------------

def test_star_examples():
    assert star(3, S222).digits == (1, 1, 0)
    assert star(-1, S48).digits == (3, 7)
    assert star(37, S48).digits == (1, 1)


def test_star_37_by_repeated_rotation():
    x = OdometerPoint.zero(S48)
    one = star(1, S48)
    for _ in range(37):
        x = add(x, one)
    assert x == star(37, S48)
    assert rotate(OdometerPoint.zero(S48), 37) == x


@given(scales, st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_star_is_a_homomorphism(scale, m, n):
    assert star(m + n, scale) == star(m, scale) + star(n, scale)
    assert star(-n, scale) == -star(n, scale)


# -- k and digits ----------------------------------------------------------------

def test_k_examples():
    assert k_of(S222, 3, (1, 1, 0)) == 3
    assert k_of(Scale((2, 2, 2, 2)), 4, (1, 0, 1, 1)) == 13
    assert k_of(S48, 2, (0, 0)) == 0
    assert digits_of(Scale((2, 2, 2, 2)), 13, 4) == (1, 0, 1, 1)
    assert digits_of(S48, 0, 2) == (0, 0)
    assert digits_of(S48, 29, 2) == (1, 7)


def test_k_errors():
    with pytest.raises(ValueError):
        k_of(S48, 2, (0, 8))
    with pytest.raises(ValueError):
        digits_of(S48, 32, 2)
    with pytest.raises(ValueError):
        digits_of(S48, -1, 2)


@settings(max_examples=50)
@given(scales)
def test_k_digits_bijection_exhaustive(scale):
    p = scale.p(scale.depth)
    if p > 1 << 14:
        scale = scale.truncate(1)
        p = scale.p(1)
    seen = set()
    for k in range(p):
        w = digits_of(scale, k, scale.depth)
        assert k_of(scale, scale.depth, w) == k
        # k is the residue whose star image has prefix w
        assert star(k, scale).digits == w
        seen.add(w)
    assert len(seen) == p


# -- metric ----------------------------------------------------------------------

def test_diameter_examples():
    assert diameter(S222, 2, Metric.canonical()) == Fraction(1, 8)
    assert diameter(Scale((4, 8, 2)), 1, Metric.canonical()) == Fraction(1, 32)
    m = Metric.custom([Fraction(1, 2 ** i) for i in range(8)])
    assert diameter(S222, 5, m) == Fraction(1, 32)


def test_canonical_diameter_needs_next_base():
    with pytest.raises(ValueError):
        diameter(S48, 2, Metric.canonical())


@pytest.mark.parametrize("values", [[1, 1], [Fraction(1, 2), 1], [1, 0], []])
def test_bad_custom_metric(values):
    with pytest.raises(ValueError):
        Metric.custom(values)


def test_custom_metric_too_short():
    with pytest.raises(ValueError):
        diameter(S222, 3, Metric.custom([1, Fraction(1, 2)]))
