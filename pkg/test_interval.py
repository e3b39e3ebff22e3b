"""Tests for the closed-interval kernel."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from errors import InvalidArgumentError
from interval import Interval, contains, is_subset, scale, width

small_ints = st.integers(min_value=-1000, max_value=1000)


@st.composite
def int_intervals(draw):
    a, b = sorted((draw(small_ints), draw(small_ints)))
    return Interval(float(a), float(b))


def test_construction_rejects_reversed_and_nan():
    with pytest.raises(ValidationError):
        Interval(2.0, 1.0)
    with pytest.raises(ValueError):
        Interval(math.nan, 1.0)


def test_infinite_endpoints_allowed():
    I = Interval(0.0, math.inf)
    assert width(I) == math.inf
    assert I.model_dump(mode="json") == {"lo": 0.0, "hi": "inf"}
    assert Interval(**{"lo": "-inf", "hi": "inf"}) == Interval.whole()


@pytest.mark.parametrize(
    "interval, alpha, expected",
    [
        (Interval(1, 2), 3, Interval(3, 6)),
        (Interval(1, 2), -3, Interval(-6, -3)),
        (Interval(-1, 1), 0, Interval(0, 0)),
        (Interval(0, math.inf), 0, Interval(0, 0)),
        (Interval(0, math.inf), -2, Interval(-math.inf, 0)),
    ],
)
def test_scale(interval, alpha, expected):
    assert scale(interval, alpha) == expected


def test_scale_by_nan_is_invalid():
    with pytest.raises(InvalidArgumentError):
        scale(Interval(0, 1), math.nan)


@given(int_intervals(), small_ints, small_ints)
def test_scale_associativity_exact_on_integers(interval, alpha, beta):
    assert interval.scale(alpha).scale(beta) == interval.scale(alpha * beta)


def test_width():
    assert width(Interval(0.70255, 1.4522)) == pytest.approx(0.74965, abs=1e-12)
    assert width(Interval(5, 5)) == 0.0
    assert width(Interval(-math.inf, 0)) == math.inf


def test_contains():
    I = Interval(0, 1)
    assert contains(I, 0.5)
    assert contains(I, 1.0)
    assert not contains(I, 1.0000001)


def test_contains_nan_is_false_and_logged(caplog):
    assert not contains(Interval(0, 1), math.nan)
    assert "NaN" in caplog.text


def test_is_subset():
    sharp = Interval(0.70255, 1.4522)
    assert is_subset(sharp, Interval(0.5, 3.6945))
    assert is_subset(sharp, sharp)
    assert not is_subset(Interval(0, 2), Interval(0, 1))


def test_hull_ignores_nan():
    assert Interval.hull([3.0, math.nan, -1.0]) == Interval(-1.0, 3.0)
    with pytest.raises(InvalidArgumentError):
        Interval.hull([math.nan])


def test_inflate_moves_endpoints_outward():
    I = Interval(1.0, 2.0).inflate(4)
    assert I.lo < 1.0 and I.hi > 2.0
    assert 2.0 - I.hi > -1e-14
    assert Interval(0.0, math.inf).inflate(4).hi == math.inf


def test_addition_resolves_opposite_infinities_outward():
    total = Interval(math.inf, math.inf) + Interval(-math.inf, 0.0)
    assert total == Interval.whole()
    assert Interval(1, 2).shift(3) == Interval(4, 5)
