"""
Catalog lookup and the function-specification grammar used by the CLI.

Grammar:

    spec     := simple | lincomb | poly
    simple   := NAME | NAME ":" NUMBER          (pow:<c> is an alias of pow_x_c:<c>)
    lincomb  := "lincomb:[" term ("," term)* "]" ["+poly:[" numbers "]"]
    term     := "(" NUMBER "," simple "," NUMBER "," NUMBER ")"     weight, f, scale, shift
    poly     := "poly:[" numbers "]"             coefficients, lowest degree first

Examples:
    exp
    leaky_relu:0.01
    pow:0.5
    lincomb:[(1.5,exp,3,0)]+poly:[0,0,-25]
"""

import re
from typing import Callable, Dict, List, Sequence, Tuple

from errors import InvalidArgumentError

from .activations import (
    gelu_function,
    hard_silu_function,
    leaky_relu_function,
    relu_function,
    silu_function,
    softplus_function,
)
from .combine import combine_linear
from .descriptor import FunctionDescriptor
from .elementary import (
    abs_function,
    cos_function,
    exp_function,
    log_function,
    pow_c_x_function,
    pow_x_c_function,
    sin_function,
)

# name -> (parameter count, factory)
CATALOG: Dict[str, Tuple[int, Callable[..., FunctionDescriptor]]] = {
    "exp": (0, exp_function),
    "pow_c_x": (1, pow_c_x_function),
    "log": (0, log_function),
    "abs": (0, abs_function),
    "pow_x_c": (1, pow_x_c_function),
    "sin": (0, sin_function),
    "cos": (0, cos_function),
    "softplus": (0, softplus_function),
    "relu": (0, relu_function),
    "leaky_relu": (1, leaky_relu_function),
    "gelu": (0, gelu_function),
    "silu": (0, silu_function),
    "hard_silu": (0, hard_silu_function),
}

ALIASES = {"pow": "pow_x_c"}

_TERM = re.compile(r"\(([^()]*)\)")


def supported_functions() -> List[str]:
    return sorted(CATALOG)


def catalog_lookup(name: str, params: Sequence[float] = ()) -> FunctionDescriptor:
    """
    Build the catalog descriptor for a name and its parameters.

    Raises:
        InvalidArgumentError: If the name is unknown, the parameter count is
            wrong or a parameter is outside its validity range
    """
    key = ALIASES.get(name, name)
    if key not in CATALOG:
        raise InvalidArgumentError(
            f"Unsupported function: '{name}'. "
            f"Supported functions: {', '.join(supported_functions())}"
        )
    arity, factory = CATALOG[key]
    if len(params) != arity:
        raise InvalidArgumentError(f"{key} takes {arity} parameter(s), got {len(params)}")
    return factory(*params)


def _number(text: str, context: str) -> float:
    try:
        return float(text.strip())
    except ValueError:
        raise InvalidArgumentError(f"Expected a number in {context}, got '{text.strip()}'")


def _numbers(body: str, context: str) -> List[float]:
    body = body.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise InvalidArgumentError(f"Expected a bracketed list in {context}, got '{body}'")
    inner = body[1:-1].strip()
    if not inner:
        return []
    return [_number(item, context) for item in inner.split(",")]


def _parse_simple(text: str) -> FunctionDescriptor:
    text = text.strip()
    if ":" in text:
        name, param = text.split(":", 1)
        return catalog_lookup(name.strip(), [_number(param, f"'{text}'")])
    return catalog_lookup(text)


def _parse_terms(body: str) -> List[tuple]:
    body = body.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise InvalidArgumentError(f"Expected lincomb:[(w,f,s,t),...], got 'lincomb:{body}'")
    inner = body[1:-1]
    terms = []
    for match in _TERM.finditer(inner):
        fields = match.group(1).split(",")
        if len(fields) != 4:
            raise InvalidArgumentError(f"lincomb term needs (w,f,s,t), got '({match.group(1)})'")
        w, f, s, t = fields
        terms.append((_number(w, "lincomb weight"), _parse_simple(f), _number(s, "lincomb scale"),
                      _number(t, "lincomb shift")))
    if _TERM.sub("", inner).replace(",", "").strip():
        raise InvalidArgumentError(f"Malformed lincomb term list: '{body}'")
    if not terms:
        raise InvalidArgumentError("lincomb needs at least one term")
    return terms


def parse_function(text: str) -> FunctionDescriptor:
    """Parse a function specification string into a descriptor."""
    text = text.strip()
    if not text:
        raise InvalidArgumentError("Empty function specification")
    if text.startswith("lincomb:"):
        body = text[len("lincomb:"):]
        poly = None
        if "+poly:" in body:
            body, poly_body = body.split("+poly:", 1)
            poly = _numbers(poly_body, "poly")
        return combine_linear(_parse_terms(body), poly)
    if text.startswith("poly:"):
        coeffs = _numbers(text[len("poly:"):], "poly")
        return combine_linear([], coeffs)
    return _parse_simple(text)
