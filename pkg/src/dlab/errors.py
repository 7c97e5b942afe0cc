"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: InputError -> 2,
VerificationError -> 1, CapacityError (incl. exhausted enumeration
budgets) -> 3.  ConsistencyError signals an internal invariant
violation (e.g. a non-integral transform result) and is never caught.
"""


class InputError(ValueError):
    """A caller-supplied value violates a documented precondition."""


class CapacityError(RuntimeError):
    """A size cap was exceeded (bit width, enumeration budget, ...)."""


class VerificationError(RuntimeError):
    """An identity or bound that must hold exactly failed to hold."""


class ConsistencyError(AssertionError):
    """Internal self-check failed; results cannot be trusted."""
