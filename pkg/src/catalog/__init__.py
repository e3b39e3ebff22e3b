"""
Function catalog: descriptors with closed-form derivatives and structural
certificates for every supported function, plus linear combinations of them.
"""

from .activations import (
    GELU_HESSIAN_RADIUS,
    HARD_SILU_HESSIAN_RADIUS,
    SILU_HESSIAN_RADIUS,
    gelu_function,
    hard_silu_function,
    leaky_relu_function,
    relu_function,
    silu_function,
    softplus_function,
)
from .combine import combine_linear
from .descriptor import (
    EvenSymmetricHessian,
    FunctionDescriptor,
    Monotonicity,
    StructureCertificate,
)
from .elementary import (
    abs_function,
    cos_function,
    exp_function,
    log_function,
    pow_c_x_function,
    pow_x_c_function,
    sin_function,
)
from .piecewise import PiecewisePolynomial, polynomial_range
from .radii import derive_hessian_radius
from .ranges import (
    DerivativeRange,
    RangeSource,
    derivative_range,
    derivative_range_detail,
    resolve_monotonicity,
)
from .registry import catalog_lookup, parse_function, supported_functions

__all__ = [
    "FunctionDescriptor",
    "StructureCertificate",
    "EvenSymmetricHessian",
    "Monotonicity",
    "PiecewisePolynomial",
    "polynomial_range",
    "DerivativeRange",
    "RangeSource",
    "derivative_range",
    "derivative_range_detail",
    "resolve_monotonicity",
    "combine_linear",
    "catalog_lookup",
    "parse_function",
    "supported_functions",
    "derive_hessian_radius",
    "GELU_HESSIAN_RADIUS",
    "SILU_HESSIAN_RADIUS",
    "HARD_SILU_HESSIAN_RADIUS",
    "exp_function",
    "pow_c_x_function",
    "log_function",
    "abs_function",
    "pow_x_c_function",
    "sin_function",
    "cos_function",
    "softplus_function",
    "relu_function",
    "leaky_relu_function",
    "gelu_function",
    "silu_function",
    "hard_silu_function",
]
