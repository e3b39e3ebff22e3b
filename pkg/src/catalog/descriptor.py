"""
Function descriptors and structural certificates.

A FunctionDescriptor bundles a 1-D function with closed-form derivatives of
every order it supports and the structural facts the enclosure dispatcher
consumes:

    - monotone_kth(k, region): whether f^(k) is monotone on the region
    - even_symmetric_hessian: radius alpha with f'' even on [-alpha, alpha]
      and nonincreasing on [0, alpha]
    - local_extrema_oracle(k, region): zeros of f^(k+1) in the region

Evaluation is vectorized over numpy arrays; `eval` and `nth_derivative` are
the scalar front ends and raise DomainError where the array versions
return NaN.
"""

import math
from enum import Enum
from typing import Callable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from errors import DomainError, InvalidArgumentError
from interval import Interval


class Monotonicity(str, Enum):
    """Monotonicity of a derivative over a region."""

    INCREASING = "increasing"
    DECREASING = "decreasing"
    UNKNOWN = "unknown"


def unknown_monotonicity(k: int, region: Interval) -> Monotonicity:
    return Monotonicity.UNKNOWN


class EvenSymmetricHessian(BaseModel):
    """f''(x) = f''(-x) on [-alpha, alpha], with f'' nonincreasing on [0, alpha]."""

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(gt=0, description="Symmetry radius, may be +inf")
    hessian_decreasing_on_0_alpha: bool = True

    def covers(self, region: Interval) -> bool:
        return -self.alpha <= region.lo and region.hi <= self.alpha


class StructureCertificate(BaseModel):
    """Structural facts about a function used to pick a sharp enclosure."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    monotone_kth: Callable[[int, Interval], Monotonicity] = Field(
        default=unknown_monotonicity,
        description="Monotonicity of f^(k) over a region",
    )
    even_symmetric_hessian: Optional[EvenSymmetricHessian] = None
    local_extrema_oracle: Optional[Callable[[int, Interval], List[float]]] = Field(
        default=None,
        description="Sorted zeros of f^(k+1) inside a region",
    )


ValueFn = Callable[[np.ndarray], np.ndarray]
DerivativeFn = Callable[[int, np.ndarray, int], np.ndarray]


class FunctionDescriptor(BaseModel):
    """A 1-D function with closed-form derivatives and structural certificates."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    value_fn: ValueFn = Field(description="Vectorized f")
    derivative_fn: DerivativeFn = Field(
        description="Vectorized f^(n)(x) for n >= 1 with a one-sided selector; NaN where undefined"
    )
    max_derivative_order: Optional[int] = Field(
        default=None, description="Highest supported order, None for unbounded"
    )
    domain: Interval = Field(default_factory=Interval.whole)
    breakpoints: Tuple[float, ...] = Field(
        default=(), description="Points where some derivative is only one-sided"
    )
    singularities: Tuple[float, ...] = Field(
        default=(), description="Points where f or a derivative is infinite"
    )
    structure: StructureCertificate = Field(default_factory=StructureCertificate)
    interval_derivative: Optional[Callable[[int, Interval], Interval]] = Field(
        default=None,
        description="Interval extension of f^(n) over a region, guaranteed to contain the true range",
    )

    # Domain

    def in_domain(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        return (xs >= self.domain.lo) & (xs <= self.domain.hi)

    def check_domain(self, x: float) -> None:
        if math.isnan(x) or not bool(self.in_domain(x)):
            raise DomainError(
                f"{self.name}: x={x!r} is outside the domain [{self.domain.lo}, {self.domain.hi}]"
            )

    def check_region(self, region: Interval) -> None:
        if not region.is_subset(self.domain):
            raise DomainError(
                f"{self.name}: region [{region.lo}, {region.hi}] is outside the domain "
                f"[{self.domain.lo}, {self.domain.hi}]"
            )

    # Evaluation

    def values(self, xs) -> np.ndarray:
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        out = np.full(xs.shape, np.nan)
        mask = self.in_domain(xs)
        if mask.any():
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                out[mask] = self.value_fn(xs[mask])
        return out

    def eval(self, x: float) -> float:
        self.check_domain(x)
        value = float(self.values(x)[0])
        if math.isnan(value):
            raise DomainError(f"{self.name}: undefined at x={x!r}")
        return value

    def __call__(self, x: float) -> float:
        return self.eval(x)

    def derivative_values(self, n: int, xs, side: int = 0) -> np.ndarray:
        if n < 0:
            raise InvalidArgumentError(f"Derivative order must be >= 0, got {n}")
        if self.max_derivative_order is not None and n > self.max_derivative_order:
            raise DomainError(
                f"{self.name}: derivative of order {n} exceeds the supported order "
                f"{self.max_derivative_order}"
            )
        if n == 0:
            return self.values(xs)
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        out = np.full(xs.shape, np.nan)
        mask = self.in_domain(xs)
        if mask.any():
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                out[mask] = self.derivative_fn(n, xs[mask], side)
        return out

    def nth_derivative(self, n: int, x: float, side: int = 0) -> float:
        """
        Scalar f^(n)(x).

        Args:
            n: Derivative order (0 returns f(x))
            x: Evaluation point
            side: +1 for the right derivative, -1 for the left, 0 for the two-sided convention

        Raises:
            DomainError: If x is outside the domain or the derivative of order n is undefined at x
        """
        self.check_domain(x)
        value = float(self.derivative_values(n, x, side)[0])
        if math.isnan(value):
            raise DomainError(f"{self.name}: derivative of order {n} is undefined at x={x!r}")
        return value

    # Derived descriptors

    def differentiate(self) -> "FunctionDescriptor":
        """Descriptor of f' with every certificate shifted by one order."""
        if self.max_derivative_order is not None and self.max_derivative_order < 1:
            raise DomainError(f"{self.name}: no first derivative available")

        parent = self
        structure = parent.structure
        oracle = structure.local_extrema_oracle

        def derivative_fn(n: int, xs: np.ndarray, side: int) -> np.ndarray:
            return parent.derivative_fn(n + 1, xs, side)

        interval_derivative = None
        if parent.interval_derivative is not None:
            def interval_derivative(n: int, region: Interval) -> Interval:
                return parent.interval_derivative(n + 1, region)

        return FunctionDescriptor(
            name=f"d/dx {parent.name}",
            value_fn=lambda xs: parent.derivative_fn(1, xs, 0),
            derivative_fn=derivative_fn,
            max_derivative_order=(
                None if parent.max_derivative_order is None else parent.max_derivative_order - 1
            ),
            domain=parent.domain,
            breakpoints=parent.breakpoints,
            singularities=parent.singularities,
            structure=StructureCertificate(
                monotone_kth=lambda k, region: structure.monotone_kth(k + 1, region),
                local_extrema_oracle=(
                    None if oracle is None else (lambda k, region: oracle(k + 1, region))
                ),
            ),
            interval_derivative=interval_derivative,
        )


def sign_monotonicity(sign: float) -> Monotonicity:
    """Monotonicity implied by the sign of the next derivative."""
    if sign > 0:
        return Monotonicity.INCREASING
    if sign < 0:
        return Monotonicity.DECREASING
    # A vanishing next derivative means a constant, which is nondecreasing.
    return Monotonicity.INCREASING
