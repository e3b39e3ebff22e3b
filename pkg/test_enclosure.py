"""Tests for the enclosure engine: sharp paths, baseline, dispatcher and evaluation."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from catalog import (
    abs_function,
    exp_function,
    gelu_function,
    hard_silu_function,
    log_function,
    parse_function,
    relu_function,
    sin_function,
    softplus_function,
)
from enclosure import (
    SHARP_METHODS,
    MethodTag,
    TaylorEnclosure,
    enclose,
    enclose_split,
    enclosure_bounds,
    enclosure_from_json,
    eval_enclosure,
    lagrange_baseline,
    sharp_even_symmetric_quadratic,
    sharp_monotone,
    split_bounds,
)
from errors import DomainError, InvalidArgumentError, OutOfRegionError, PreconditionError
from interval import Interval
from oracle import grid_sharp_interval, verify_enclosure
from taylor_core import TaylorPoly

SQRT_E = math.exp(0.5)
E2 = math.exp(2.0)


@pytest.fixture
def exp_report():
    return enclose(exp_function(), 2, 0.5, Interval(0.0, 2.0))


# Sharp monotone


def test_exp_quadratic_enclosure(exp_report):
    e = exp_report.enclosure
    assert e.method == MethodTag.SHARP_MONOTONE
    assert e.interval_coeff.lo == pytest.approx(4.0 - 2.0 * SQRT_E, rel=1e-12)
    assert e.interval_coeff.hi == pytest.approx((E2 - 2.5 * SQRT_E) / 2.25, rel=1e-12)
    assert e.interval_coeff.lo == pytest.approx(0.70255, abs=1e-5)
    assert e.interval_coeff.hi == pytest.approx(1.4522, abs=1e-4)
    assert exp_report.baseline_interval.lo == pytest.approx(0.5)
    assert exp_report.baseline_interval.hi == pytest.approx(3.6945, abs=1e-4)
    assert exp_report.width_ratio == pytest.approx(4.262, abs=1e-3)
    assert e.lower_coeffs.coeffs == pytest.approx((SQRT_E, SQRT_E))


def test_endpoint_expansion_uses_the_limit():
    interval = sharp_monotone(exp_function(), 2, 0.0, Interval(0.0, 2.0))
    assert interval.lo == pytest.approx(0.5, rel=1e-12)
    assert interval.hi == pytest.approx((E2 - 3.0) / 4.0, rel=1e-12)


def test_shrinking_region_at_endpoint_approaches_half():
    interval = sharp_monotone(exp_function(), 2, 0.0, Interval(0.0, 1e-6))
    assert interval.lo == pytest.approx(0.5, rel=1e-12)
    assert interval.hi == pytest.approx(0.5, rel=1e-6)


def test_decreasing_derivative():
    f = log_function()
    interval = sharp_monotone(f, 1, 1.0, Interval(0.5, 2.0))
    # log' decreasing: the difference quotient is largest at a
    assert interval.hi == pytest.approx(math.log(0.5) / -0.5)
    assert interval.lo == pytest.approx(math.log(2.0))


def test_sharp_monotone_requires_a_certificate():
    with pytest.raises(PreconditionError):
        sharp_monotone(sin_function(), 2, 0.0, Interval(-1.0, 3.0))


def test_sin_cubic_via_empty_extrema_set():
    report = enclose(sin_function(), 3, 0.1, Interval(0.0, 0.3))
    assert report.enclosure.method == MethodTag.SHARP_MONOTONE
    grid = grid_sharp_interval(sin_function(), 3, 0.1, Interval(0.0, 0.3), n=100_001)
    assert report.enclosure.interval_coeff.lo == pytest.approx(grid.lo, abs=1e-9)
    assert report.enclosure.interval_coeff.hi == pytest.approx(grid.hi, abs=1e-9)


def test_lincomb_monotone_via_interval_extension():
    f = parse_function("lincomb:[(1.5,exp,3,0)]+poly:[0,0,-25]")
    report = enclose(f, 2, 0.5, Interval(0.0, 1.0))
    assert report.enclosure.method == MethodTag.SHARP_MONOTONE
    assert report.enclosure.lower_coeffs.coeffs[0] == pytest.approx(1.5 * math.exp(1.5) - 6.25)


# Sharp even-symmetric


def test_relu_even_symmetric():
    report = enclose(relu_function(), 2, 0.5, Interval(-1.0, 1.0))
    assert report.enclosure.method == MethodTag.SHARP_EVEN_SYMMETRIC
    assert report.enclosure.interval_coeff.lo == pytest.approx(0.0, abs=1e-15)
    assert report.enclosure.interval_coeff.hi == pytest.approx(0.5, rel=1e-12)
    assert report.baseline_interval == Interval(0.0, math.inf)
    assert report.width_ratio == math.inf


def test_softplus_even_symmetric():
    interval = sharp_even_symmetric_quadratic(softplus_function(), 1.0, Interval(-2.0, 2.0))
    assert interval.lo == pytest.approx(0.08261, abs=1e-5)
    assert interval.hi == pytest.approx(0.11553, abs=1e-5)
    report = enclose(softplus_function(), 2, 1.0, Interval(-2.0, 2.0))
    assert report.enclosure.method == MethodTag.SHARP_EVEN_SYMMETRIC


def test_symmetric_region_centered_at_zero():
    f = gelu_function()
    interval = sharp_even_symmetric_quadratic(f, 0.0, Interval(-1.5, 1.5))
    r_b = (f.eval(1.5) - f.eval(0.0) - f.nth_derivative(1, 0.0) * 1.5) / 2.25
    assert interval.hi == pytest.approx(f.nth_derivative(2, 0.0) / 2.0, rel=1e-12)
    assert interval.lo == pytest.approx(r_b, rel=1e-12)


def test_even_symmetric_preconditions():
    with pytest.raises(PreconditionError):
        sharp_even_symmetric_quadratic(exp_function(), 0.5, Interval(0.0, 1.0))
    with pytest.raises(PreconditionError):
        sharp_even_symmetric_quadratic(gelu_function(), 0.5, Interval(-1.0, 3.0))
    with pytest.raises(PreconditionError):
        sharp_even_symmetric_quadratic(softplus_function(), -2.0, Interval(-2.0, 2.0))


def test_even_symmetric_with_x0_at_endpoint_falls_through():
    report = enclose(gelu_function(), 2, -1.0, Interval(-1.0, 1.0))
    assert report.enclosure.method != MethodTag.SHARP_EVEN_SYMMETRIC


# Baseline and fallbacks


def test_lagrange_baseline():
    assert lagrange_baseline(exp_function(), 2, Interval(0.0, 2.0)).hi == pytest.approx(E2 / 2)
    assert lagrange_baseline(exp_function(), 1, Interval(0.0, 2.0)).hi == pytest.approx(E2)
    assert lagrange_baseline(relu_function(), 2, Interval(-1.0, 1.0)) == Interval(0.0, math.inf)
    with pytest.raises(InvalidArgumentError):
        lagrange_baseline(exp_function(), 0, Interval(0.0, 1.0))


def test_gelu_outside_radius_uses_local_extrema():
    report = enclose(gelu_function(), 2, 0.5, Interval(-1.0, 3.0))
    assert report.enclosure.method == MethodTag.LOCAL_EXTREMA
    assert report.enclosure.interval_coeff == report.baseline_interval
    assert report.width_ratio == 1.0


def test_hard_silu_constant_hessian():
    report = enclose(hard_silu_function(), 2, 0.0, Interval(-3.0, 3.0))
    assert report.enclosure.method == MethodTag.SHARP_MONOTONE
    assert report.enclosure.interval_coeff.lo == pytest.approx(1.0 / 6.0)
    assert report.enclosure.interval_coeff.hi == pytest.approx(1.0 / 6.0)
    assert report.width_ratio == 1.0


@pytest.mark.parametrize(
    "x0, region, lo",
    [
        (0.0, Interval(-4.0, 4.0), 0.125),
        (1.0, Interval(-5.0, 5.0), 0.0625),
        (2.0, Interval(-6.0, 6.0), -1.0 / 48.0),
        (0.5, Interval(-4.0, 1.0), 65.0 / 486.0),
    ],
)
def test_hard_silu_past_its_kinks_is_even_symmetric(x0, region, lo):
    f = hard_silu_function()
    report = enclose(f, 2, x0, region)
    assert report.enclosure.method == MethodTag.SHARP_EVEN_SYMMETRIC
    assert report.enclosure.interval_coeff.lo == pytest.approx(lo, rel=1e-12)
    assert report.enclosure.interval_coeff.hi == pytest.approx(1.0 / 6.0, rel=1e-12)
    grid = grid_sharp_interval(f, 2, x0, region, n=200_001)
    assert grid.lo == pytest.approx(lo, abs=1e-9)
    assert grid.hi == pytest.approx(1.0 / 6.0, abs=1e-6)


@pytest.mark.parametrize("slope", [1.5, 2.0])
def test_steep_leaky_relu_falls_back_to_a_sound_baseline(slope):
    # the ratio dips to its minimum at -x0 instead of peaking there
    f = parse_function(f"leaky_relu:{slope}")
    x0, region = 0.5, Interval(-1.0, 1.0)
    report = enclose(f, 2, x0, region)
    assert report.enclosure.method != MethodTag.SHARP_EVEN_SYMMETRIC
    grid = grid_sharp_interval(f, 2, x0, region, n=20_001)
    assert grid.lo == pytest.approx((1.0 - slope) / 2.0, abs=1e-9)
    assert grid.hi == pytest.approx(0.0, abs=1e-7)
    assert report.enclosure.interval_coeff.lo <= grid.lo
    assert report.enclosure.interval_coeff.hi >= 0.0
    assert verify_enclosure(f, report.enclosure, n=2_001).ok


def test_abs_quadratic_is_vacuous_across_the_kink():
    report = enclose(abs_function(), 2, 1.0, Interval(-1.0, 2.0))
    assert report.enclosure.method == MethodTag.INTERVAL_DERIVATIVE
    assert report.enclosure.interval_coeff == Interval.whole()
    assert report.width_ratio == math.inf
    assert report.diagnostics


def test_abs_linear_is_sharp():
    report = enclose(abs_function(), 1, 1.0, Interval(-1.0, 2.0))
    assert report.enclosure.method in SHARP_METHODS
    assert report.enclosure.interval_coeff.lo == pytest.approx(0.0)
    assert report.enclosure.interval_coeff.hi == pytest.approx(1.0)


# Validation


@pytest.mark.parametrize(
    "k, x0, region",
    [
        (0, 0.5, Interval(0.0, 1.0)),
        (2, 0.5, Interval(1.0, 1.0)),
        (2, 1.5, Interval(0.0, 1.0)),
        (2, math.nan, Interval(0.0, 1.0)),
        (2, 0.5, Interval(0.0, math.inf)),
    ],
)
def test_invalid_arguments(k, x0, region):
    with pytest.raises(InvalidArgumentError):
        enclose(exp_function(), k, x0, region)


def test_region_outside_domain():
    with pytest.raises(DomainError):
        enclose(log_function(), 2, 0.5, Interval(-1.0, 1.0))


def test_enclosure_validator():
    poly = TaylorPoly(x0=3.0, coeffs=(1.0,))
    with pytest.raises(ValidationError):
        TaylorEnclosure(
            x0=3.0, k=1, lower_coeffs=poly, interval_coeff=Interval(0, 1),
            trust_region=Interval(0, 1), method=MethodTag.SHARP_MONOTONE,
        )
    with pytest.raises(ValidationError):
        TaylorEnclosure(
            x0=0.5, k=2, lower_coeffs=TaylorPoly(x0=0.5, coeffs=(1.0,)), interval_coeff=Interval(0, 1),
            trust_region=Interval(0, 1), method=MethodTag.SHARP_MONOTONE,
        )


# Evaluation


def test_eval_at_x0_is_tight(exp_report):
    bound = eval_enclosure(exp_report.enclosure, 0.5)
    assert bound.lo == bound.hi
    assert bound.lo == pytest.approx(SQRT_E, rel=1e-15)


def test_upper_bound_touches_f_at_the_far_endpoint(exp_report):
    bound = eval_enclosure(exp_report.enclosure, 2.0)
    assert bound.lo == pytest.approx(2.5 * SQRT_E + 0.70255 * 2.25, abs=1e-4)
    assert bound.hi == pytest.approx(E2, abs=1e-3)


def test_odd_degree_swaps_endpoints_left_of_x0():
    report = enclose(exp_function(), 1, 0.5, Interval(0.0, 2.0))
    I = report.enclosure.interval_coeff
    assert I.lo == pytest.approx(1.29744, abs=1e-5)
    assert I.hi == pytest.approx(3.82689, abs=1e-5)
    bound = eval_enclosure(report.enclosure, 0.0)
    assert bound.lo == pytest.approx(SQRT_E - 0.5 * I.hi)
    assert bound.hi == pytest.approx(SQRT_E - 0.5 * I.lo)
    assert bound.contains(1.0)


def test_eval_outside_region(exp_report):
    with pytest.raises(OutOfRegionError):
        eval_enclosure(exp_report.enclosure, 2.5)
    with pytest.raises(OutOfRegionError):
        enclosure_bounds(exp_report.enclosure, [0.0, math.nan])


def test_vectorized_bounds_match_scalar(exp_report):
    xs = np.linspace(0.0, 2.0, 11)
    lower, upper = enclosure_bounds(exp_report.enclosure, xs)
    for x, lo, hi in zip(xs, lower, upper):
        bound = eval_enclosure(exp_report.enclosure, float(x))
        assert lo == pytest.approx(bound.lo, rel=1e-14, abs=1e-15)
        assert hi == pytest.approx(bound.hi, rel=1e-14, abs=1e-15)


# Split enclosures


def test_split_is_at_least_as_tight():
    f = parse_function("lincomb:[(1,exp,2,0)]")
    region = Interval(0.0, 1.0)
    pieces = enclose_split(f, 1, 0.5, region)
    assert len(pieces) == 2
    assert pieces[0].trust_region == Interval(0.0, 0.5)
    assert pieces[1].trust_region == Interval(0.5, 1.0)
    xs = np.linspace(0.0, 1.0, 1001)
    split_lower, split_upper = split_bounds(pieces, xs)
    lower, upper = enclosure_bounds(enclose(f, 1, 0.5, region).enclosure, xs)
    assert np.all(split_lower >= lower - 1e-12)
    assert np.all(split_upper <= upper + 1e-12)
    fx = f.values(xs)
    assert np.all(split_lower <= fx + 1e-12) and np.all(fx <= split_upper + 1e-12)


def test_split_of_an_affine_function_has_zero_width():
    f = parse_function("poly:[1,2]")
    for piece in enclose_split(f, 1, 0.25, Interval(-1.0, 1.0)):
        assert piece.interval_coeff.lo == pytest.approx(2.0)
        assert piece.interval_coeff.hi == pytest.approx(2.0)


def test_split_with_x0_at_endpoint_is_single():
    pieces = enclose_split(exp_function(), 1, 0.5, Interval(0.5, 2.0))
    assert len(pieces) == 1
    assert pieces[0].interval_coeff.lo == pytest.approx(SQRT_E)


def test_split_requires_odd_degree():
    with pytest.raises(InvalidArgumentError):
        enclose_split(exp_function(), 2, 0.5, Interval(0.0, 1.0))


def test_split_bounds_outside_pieces():
    pieces = enclose_split(exp_function(), 1, 0.5, Interval(0.0, 1.0))
    with pytest.raises(OutOfRegionError):
        split_bounds(pieces, [1.5])


# JSON


def test_report_json_round_trip(exp_report):
    data = exp_report.to_json_dict()
    assert data["method"] == "SharpMonotone"
    assert set(data) == {
        "function", "k", "x0", "region", "method", "interval", "baseline",
        "width_ratio", "taylor_coeffs", "diagnostics",
    }
    assert enclosure_from_json(data) == exp_report.enclosure


def test_malformed_enclosure_json():
    with pytest.raises(InvalidArgumentError):
        enclosure_from_json({"k": 2})
