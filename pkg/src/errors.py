"""
Exception hierarchy for the sharp Taylor enclosure engine.

Every error raised on purpose by the library derives from EnclosureError and
from ValueError, so callers can catch either. The CLI maps
InvalidArgumentError to a usage error (exit 2) and the rest to a domain
error (exit 1).

Classes:
    - EnclosureError: Root of the hierarchy
    - InvalidArgumentError: Bad scalars, params, names or grammar
    - DomainError: Evaluation outside a function's domain or undefined derivative
    - PreconditionError: Sharp path called without its certificate
    - OutOfRegionError: Enclosure evaluated outside its trust region
    - VacuousMajorizerError: MM step whose upper coefficient is +inf
"""


class EnclosureError(Exception):
    """Base class for all library errors."""

    kind = "enclosure_error"


class InvalidArgumentError(EnclosureError, ValueError):
    kind = "invalid_argument"


class DomainError(EnclosureError, ValueError):
    kind = "domain_error"


class PreconditionError(EnclosureError, ValueError):
    kind = "precondition_error"


class OutOfRegionError(EnclosureError, ValueError):
    kind = "out_of_region"


class VacuousMajorizerError(EnclosureError, ValueError):
    kind = "vacuous_majorizer"
