"""Exception hierarchy shared by every colog module.

Two branches matter to callers: InputError (the input itself is malformed
or inconsistent; CLI exit code 1) and InfeasibleError (the input is well
formed but the requested computation has no answer; CLI exit code 2).
"""


class CologError(Exception):
    """Base class for all errors raised by this package."""


class InputError(CologError):
    """Malformed, inconsistent, or incomplete input."""


class InfeasibleError(CologError):
    """Well-formed input for which no valid result exists."""


# -- input errors -----------------------------------------------------------


class SchemaError(InputError):
    """Scenario document violates the schema (unknown key, bad type, bad shape)."""


class DanglingReferenceError(InputError):
    """An id is referenced but never declared (unknown shipper, truck owner, ...)."""


class NormalizationError(InputError):
    """A value fails normalization (bad sign token, bad window text, ...)."""


class DimensionMismatch(InputError):
    """Vectors that must share the dimension list do not."""


class EmptyInput(InputError):
    """An operation that needs at least one element got none."""


class RegistryError(InputError):
    """Unknown uncertainty condition name."""


class PolarityError(InputError):
    """A polarity is not offered by the condition (or is not '+'/'-')."""


class MissingIntent(InputError):
    """Compliance filtering was requested without an intent vector."""


class UnknownTruck(InputError):
    """A trip references a truck label that is not in the roster."""


class UnknownKey(InputError):
    """A lookup key does not resolve (emission-standard table, fixtures, ...)."""


class UsageError(InputError):
    """Bad command line (CLI exit code 64)."""


# -- infeasibility errors ---------------------------------------------------


class AxiomViolation(InfeasibleError):
    """An operational-complexity axiom is violated (k_o of 0 or 1)."""


class SingularState(InfeasibleError):
    """Trio conditionality is undefined: k_o * max(dA, dE) is zero."""


class OutsideRegime(InfeasibleError):
    """Trio conditionality exceeds 1: outside the modeled regime."""


class Infeasible(InfeasibleError):
    """No feasible assignment exists (e.g. an order exceeds every capacity)."""


class NoTrucks(InfeasibleError):
    """Orders exist but no truck is available to carry them."""


class Unreachable(InfeasibleError):
    """No path between two network nodes (or a node is absent)."""


class WindowInfeasible(InfeasibleError):
    """A routed schedule violates a delivery window or travel-time bound."""
