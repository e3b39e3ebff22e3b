"""Property-based checks of the enclosure engine against brute force.

Regions have width at least 0.5 and x0 sits at an endpoint or between 10% and
90% of the region.
"""

import math

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st
from scipy import integrate

from catalog import parse_function
from enclosure import SHARP_METHODS, MethodTag, enclose
from interval import Interval
from oracle import grid_sharp_interval, verify_enclosure
from taylor_core import (
    expansion_side,
    remainder,
    remainder_ratio,
    remainder_ratio_values,
    taylor_coefficients,
)

# spec -> (max k, lowest region start, highest region start)
FUNCTIONS = {
    "exp": (4, -3.0, 2.0),
    "pow_c_x:2": (4, -3.0, 2.0),
    "log": (4, 0.2, 3.0),
    "pow:2.5": (4, 0.2, 3.0),
    "pow:-1": (4, 0.2, 3.0),
    "sin": (4, -3.0, 2.0),
    "cos": (4, -3.0, 2.0),
    "softplus": (4, -3.0, 2.0),
    "gelu": (4, -3.0, 2.0),
    "silu": (4, -3.0, 2.0),
    "relu": (2, -3.0, 2.0),
    "leaky_relu:0.1": (2, -3.0, 2.0),
    "hard_silu": (2, -4.0, 3.0),
    "lincomb:[(1.5,exp,3,0)]+poly:[0,0,-25]": (4, -1.0, 0.5),
}

SMOOTH = ["exp", "pow_c_x:2", "log", "pow:2.5", "sin", "cos", "softplus", "gelu", "silu"]

PROPERTY_SETTINGS = settings(
    max_examples=20,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)


@st.composite
def configurations(draw, spec):
    max_k, start_lo, start_hi = FUNCTIONS[spec]
    k = draw(st.integers(min_value=1, max_value=max_k))
    lo = draw(st.floats(min_value=start_lo, max_value=start_hi))
    width = draw(st.floats(min_value=0.5, max_value=3.0))
    region = Interval(lo, lo + width)
    fraction = draw(st.one_of(st.just(0.0), st.just(1.0), st.floats(min_value=0.1, max_value=0.9)))
    x0 = region.hi if fraction == 1.0 else region.lo + fraction * width
    return k, x0, region


def _close(a: float, b: float, tol: float = 1e-5) -> bool:
    if a == b:
        return True
    return abs(a - b) <= tol + tol * max(abs(a), abs(b))


@pytest.mark.parametrize("spec", sorted(FUNCTIONS))
@PROPERTY_SETTINGS
@given(data=st.data())
def test_enclosures_are_valid(spec, data):
    f = parse_function(spec)
    k, x0, region = data.draw(configurations(spec))
    report = enclose(f, k, x0, region)
    validity = verify_enclosure(f, report.enclosure, n=2000)
    assert validity.ok, validity.to_json_dict()["violations"][:3]


@pytest.mark.parametrize("spec", sorted(FUNCTIONS))
@PROPERTY_SETTINGS
@given(data=st.data())
def test_interval_is_inside_the_baseline(spec, data):
    f = parse_function(spec)
    k, x0, region = data.draw(configurations(spec))
    report = enclose(f, k, x0, region)
    assert report.enclosure.interval_coeff.is_subset(report.baseline_interval)
    assert report.width_ratio >= 1.0 - 1e-12


@pytest.mark.parametrize("spec", sorted(FUNCTIONS))
@PROPERTY_SETTINGS
@given(data=st.data())
def test_grid_interval_is_inside_every_enclosure(spec, data):
    f = parse_function(spec)
    k, x0, region = data.draw(configurations(spec))
    e = enclose(f, k, x0, region).enclosure
    grid = grid_sharp_interval(f, k, x0, region, n=20_001)
    I = e.interval_coeff
    assert grid.lo >= I.lo - 1e-7 * (1 + abs(I.lo)) or I.lo == -math.inf
    assert grid.hi <= I.hi + 1e-7 * (1 + abs(I.hi)) or I.hi == math.inf


@pytest.mark.parametrize("spec", sorted(FUNCTIONS))
@PROPERTY_SETTINGS
@given(data=st.data())
def test_sharp_methods_match_the_grid(spec, data):
    f = parse_function(spec)
    k, x0, region = data.draw(configurations(spec))
    e = enclose(f, k, x0, region).enclosure
    assume(e.method in SHARP_METHODS)
    grid = grid_sharp_interval(f, k, x0, region, n=20_001)
    assert _close(e.interval_coeff.lo, grid.lo)
    assert _close(e.interval_coeff.hi, grid.hi)


@pytest.mark.parametrize("spec", ["exp", "log", "pow:2.5", "pow_c_x:2", "pow:-1"])
@PROPERTY_SETTINGS
@given(data=st.data())
def test_ratio_is_monotone_when_the_derivative_is(spec, data):
    f = parse_function(spec)
    k, x0, region = data.draw(configurations(spec))
    e = enclose(f, k, x0, region).enclosure
    assert e.method == MethodTag.SHARP_MONOTONE
    xs = np.linspace(region.lo, region.hi, 401)
    xs = xs[np.abs(xs - x0) >= 0.05]
    poly = taylor_coefficients(f, k - 1, x0, side=expansion_side(x0, region))
    r = remainder_ratio_values(f, k, poly, xs)
    steps = np.diff(r)
    slack = 1e-9 * (1 + np.abs(r[1:]))
    assert np.all(steps >= -slack) or np.all(steps <= slack)


@pytest.mark.parametrize("spec", ["softplus", "gelu", "silu", "relu", "leaky_relu:0.1"])
@PROPERTY_SETTINGS
@given(
    lo=st.floats(min_value=-2.0, max_value=0.5),
    width=st.floats(min_value=0.5, max_value=1.5),
    fraction=st.floats(min_value=0.1, max_value=0.9),
)
def test_even_symmetric_ratio_peaks_at_c(spec, lo, width, fraction):
    f = parse_function(spec)
    region = Interval(lo, lo + width)
    x0 = lo + fraction * width
    c = min(region.hi, max(-x0, region.lo))
    xs = np.linspace(region.lo, region.hi, 401)
    keep = (np.abs(xs - x0) >= 0.05) & (np.abs(xs) > 1e-9) & (xs > region.lo) & (xs < region.hi)
    xs = xs[keep]
    r = remainder_ratio_values(f, 2, taylor_coefficients(f, 1, x0), xs)
    left, right = r[xs <= c], r[xs >= c]
    slack = 1e-9
    assert np.all(np.diff(left) >= -slack)
    assert np.all(np.diff(right) <= slack)


@pytest.mark.parametrize("spec", SMOOTH)
@pytest.mark.parametrize("k", [1, 2, 3])
def test_remainder_matches_integral_form(spec, k):
    f = parse_function(spec)
    x0, x = (1.2, 2.1) if spec in ("log", "pow:2.5") else (0.3, -0.8)
    value, _ = integrate.quad(
        lambda t: f.nth_derivative(k, t) * (x - t) ** (k - 1) / math.factorial(k - 1), x0, x,
        epsabs=0.0, epsrel=1e-12,
    )
    assert remainder(f, k - 1, x0, x) == pytest.approx(value, rel=1e-8, abs=1e-12)


@pytest.mark.parametrize("spec", SMOOTH)
@pytest.mark.parametrize("k", [1, 2, 4])
def test_ratio_is_a_weighted_mean_of_the_derivative(spec, k):
    f = parse_function(spec)
    x0, x = (1.2, 2.1) if spec in ("log", "pow:2.5") else (0.3, -0.8)
    d = x - x0
    value, _ = integrate.quad(
        lambda t: f.nth_derivative(k, x0 + t * d) * (1 - t) ** (k - 1) / math.factorial(k - 1), 0.0, 1.0,
        epsabs=0.0, epsrel=1e-12,
    )
    assert remainder_ratio(f, k, x0, x) == pytest.approx(value, rel=1e-8, abs=1e-12)


def _central_derivative(g, x: float, h: float) -> float:
    # Richardson-extrapolated central difference, error O(h^4)
    coarse = (g(x + h) - g(x - h)) / (2.0 * h)
    fine = (g(x + h / 2.0) - g(x - h / 2.0)) / h
    return (4.0 * fine - coarse) / 3.0


@pytest.mark.parametrize("spec", SMOOTH)
@PROPERTY_SETTINGS
@given(
    j=st.integers(min_value=1, max_value=4),
    x0=st.floats(min_value=-1.5, max_value=1.5),
    offset=st.floats(min_value=0.5, max_value=1.5),
    direction=st.sampled_from([-1.0, 1.0]),
)
def test_remainder_differentiates_to_the_remainder_of_the_derivative(spec, j, x0, offset, direction):
    f = parse_function(spec)
    if spec in ("log", "pow:2.5"):
        x0 += 3.5
    x = x0 + direction * offset
    slope = _central_derivative(lambda t: remainder(f, j, x0, t), x, 1e-3)
    expected = remainder(f.differentiate(), j - 1, x0, x)
    assert slope == pytest.approx(expected, rel=1e-6, abs=1e-9)


@pytest.mark.slow
@pytest.mark.parametrize("spec", sorted(FUNCTIONS))
@settings(
    max_examples=4,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
@given(data=st.data())
def test_sharp_methods_match_a_million_point_grid(spec, data):
    f = parse_function(spec)
    k, x0, region = data.draw(configurations(spec))
    e = enclose(f, k, x0, region).enclosure
    assume(e.method in SHARP_METHODS)
    grid = grid_sharp_interval(f, k, x0, region, n=1_000_000)
    assert _close(e.interval_coeff.lo, grid.lo, tol=1e-6)
    assert _close(e.interval_coeff.hi, grid.hi, tol=1e-6)
