"""Tests for Taylor polynomials, remainders and the remainder ratio."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from catalog import (
    exp_function,
    log_function,
    parse_function,
    relu_function,
    silu_function,
    sin_function,
)
from config import Settings, initialize_settings
from enclosure import enclose
from errors import DomainError, InvalidArgumentError
from interval import Interval
from oracle import verify_enclosure
from taylor_core import (
    TaylorPoly,
    expansion_side,
    near_x0_radius,
    ratio_limit,
    remainder,
    remainder_ratio,
    remainder_ratio_values,
    singular_distance,
    taylor_coefficients,
)

SQRT_E = math.exp(0.5)


def test_taylor_coefficients_of_exp():
    poly = taylor_coefficients(exp_function(), 1, 0.5)
    assert poly.x0 == 0.5
    assert poly.coeffs == pytest.approx((SQRT_E, SQRT_E), rel=1e-15)
    assert poly.degree == 1


def test_taylor_coefficients_include_factorials():
    poly = taylor_coefficients(sin_function(), 3, 0.0)
    assert poly.coeffs == pytest.approx((0.0, 1.0, 0.0, -1.0 / 6.0), abs=1e-16)


def test_empty_polynomial_for_degree_minus_one():
    poly = taylor_coefficients(exp_function(), -1, 0.0)
    assert poly.coeffs == ()
    assert poly.eval(3.0) == 0.0
    assert remainder(exp_function(), -1, 0.0, 1.0) == pytest.approx(math.e)


def test_negative_degree_rejected():
    with pytest.raises(InvalidArgumentError):
        taylor_coefficients(exp_function(), -2, 0.0)


def test_taylor_poly_rejects_non_finite_coefficients():
    with pytest.raises(ValidationError):
        TaylorPoly(x0=0.0, coeffs=(1.0, math.inf))


def test_taylor_poly_evaluation_and_magnitude():
    poly = TaylorPoly(x0=1.0, coeffs=(1.0, -2.0, 3.0))
    assert poly.eval(3.0) == 1.0 - 4.0 + 12.0
    assert poly.magnitude(np.array([3.0]))[0] == 1.0 + 4.0 + 12.0


def test_remainder_ratio_of_exp():
    expected = (math.exp(2.0) - SQRT_E - SQRT_E * 1.5) / 1.5 ** 2
    assert remainder_ratio(exp_function(), 2, 0.5, 2.0) == pytest.approx(expected, rel=1e-13)
    assert expected == pytest.approx(1.4522, abs=1e-4)


def test_remainder_ratio_at_x0_is_the_limit():
    assert remainder_ratio(exp_function(), 2, 0.5, 0.5) == pytest.approx(SQRT_E / 2, rel=1e-15)
    assert ratio_limit(exp_function(), 3, 0.0) == pytest.approx(1.0 / 6.0)


def test_remainder_ratio_is_continuous_through_x0():
    f = exp_function()
    limit = remainder_ratio(f, 2, 0.0, 0.0)
    for d in (1e-9, 1e-6, 1e-3, -1e-6):
        expected = 0.5 + d / 6.0 + d * d / 24.0
        value = remainder_ratio(f, 2, 0.0, d)
        # the quotient branch at 1e-3 carries about eps / d^2 of cancellation error
        assert value == pytest.approx(expected, rel=1e-8)
        assert abs(value - limit) <= 1e-3 * (1.0 + abs(limit))


def test_near_x0_radius_is_capped_by_the_nearest_singularity():
    log = log_function()
    assert singular_distance(log, 1e-4) == pytest.approx(1e-4)
    assert singular_distance(exp_function(), 3.0) == math.inf
    assert near_x0_radius(2, 1e-4, log) == pytest.approx(1e-5)
    assert near_x0_radius(2, 5.0, log) == pytest.approx(near_x0_radius(2, 5.0))


def _log_ratio(k, x0, x):
    u = (x - x0) / x0
    partial = sum((-1) ** (i + 1) * u ** i / i for i in range(1, k))
    return (math.log1p(u) - partial) / (x - x0) ** k


def test_log_ratio_far_from_x0_near_the_singularity():
    # |x - x0| is 90% of the distance to 0, where the series barely converges
    value = remainder_ratio(log_function(), 4, 0.01, 0.001)
    assert value == pytest.approx(_log_ratio(4, 0.01, 0.001), rel=1e-9)
    assert value == pytest.approx(-115010683.3, rel=1e-8)


@pytest.mark.parametrize(
    "k, x0, x",
    [
        (2, 1e-4, 2e-6),
        (2, 1e-4, 1e-4 + 5e-6),
        (3, 0.002, 0.002 + 1e-4),
        (3, 0.002, 0.0015),
        (4, 0.01, 0.0105),
    ],
)
def test_log_ratio_close_to_the_singularity(k, x0, x):
    assert remainder_ratio(log_function(), k, x0, x) == pytest.approx(_log_ratio(k, x0, x), rel=1e-8)


@pytest.mark.parametrize(
    "k, x0, region",
    [
        (2, 1e-4, Interval(2e-6, 2e-4)),
        (3, 0.002, Interval(0.0005, 0.004)),
        (4, 0.01, Interval(0.001, 0.02)),
    ],
)
def test_log_enclosures_near_the_singularity_hold(k, x0, region):
    f = log_function()
    report = enclose(f, k, x0, region)
    audit = verify_enclosure(f, report.enclosure, n=5_001)
    assert audit.ok
    assert audit.violations == ()


def test_diverging_tail_falls_back_to_the_quotient():
    # silu's series at 3 converges only within pi, below this switch radius
    initialize_settings(Settings(near_x0_tolerance=0.99))
    f = silu_function()
    x0, x = 3.0, 6.5
    assert near_x0_radius(2, x0, f) > x - x0

    s0 = 1.0 / (1.0 + math.exp(-x0))
    value0 = x0 * s0
    slope0 = s0 * (1.0 + x0 * (1.0 - s0))
    expected = (x / (1.0 + math.exp(-x)) - value0 - slope0 * (x - x0)) / (x - x0) ** 2
    assert remainder_ratio(f, 2, x0, x) == pytest.approx(expected, rel=1e-12)


def test_tail_and_quotient_agree_at_the_switch_radius():
    f = exp_function()
    for k in (2, 3, 4):
        radius = near_x0_radius(k, 0.0)
        inside = remainder_ratio(f, k, 0.0, radius * 0.999)
        outside = remainder_ratio(f, k, 0.0, radius * 1.001)
        assert inside == pytest.approx(outside, rel=1e-5)


def test_near_x0_radius_scales_with_degree():
    assert near_x0_radius(2, 0.0) == pytest.approx(1e-4)
    assert near_x0_radius(2, 9.0) == pytest.approx(1e-3)
    assert near_x0_radius(4, 0.0) > near_x0_radius(2, 0.0)


def test_remainder_ratio_argument_errors():
    with pytest.raises(InvalidArgumentError):
        remainder_ratio(exp_function(), 0, 0.0, 1.0)
    with pytest.raises(DomainError):
        remainder_ratio(log_function(), 2, 1.0, -1.0)


def test_log_derivative_at_singularity_is_a_domain_error():
    with pytest.raises(DomainError):
        taylor_coefficients(log_function(), 1, 0.0)


def test_one_sided_coefficients_at_a_kink():
    relu = relu_function()
    assert taylor_coefficients(relu, 1, 0.0, side=1).coeffs == (0.0, 1.0)
    assert taylor_coefficients(relu, 1, 0.0, side=-1).coeffs == (0.0, 0.0)


def test_expansion_side():
    region = Interval(0.0, 1.0)
    assert expansion_side(0.0, region) == 1
    assert expansion_side(1.0, region) == -1
    assert expansion_side(0.5, region) == 0


def test_vectorized_ratio_matches_scalar():
    f = parse_function("lincomb:[(1.5,exp,3,0)]+poly:[0,0,-25]")
    poly = taylor_coefficients(f, 1, 0.5)
    xs = np.array([0.0, 0.25, 0.5, 0.5 + 1e-7, 1.0])
    vector = remainder_ratio_values(f, 2, poly, xs)
    for x, value in zip(xs, vector):
        assert value == pytest.approx(remainder_ratio(f, 2, 0.5, float(x)), rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=1, max_value=5),
    st.floats(min_value=-2.0, max_value=2.0),
    st.floats(min_value=-1.5, max_value=1.5),
)
def test_ratio_of_exp_lies_between_derivative_bounds(k, x0, offset):
    # the ratio equals f^(k)(xi)/k! for some xi between x0 and x
    x = x0 + offset
    r = remainder_ratio(exp_function(), k, x0, x)
    lo = math.exp(min(x0, x)) / math.factorial(k)
    hi = math.exp(max(x0, x)) / math.factorial(k)
    assert lo - 1e-6 <= r <= hi + 1e-6
