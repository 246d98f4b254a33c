"""Exception hierarchy shared by every module.

The CLI maps :class:`ConfigError` to exit status 2 and every
:class:`NumericalError` subclass to exit status 3.
"""


class MolqiError(Exception):
    """Base class for all package errors."""


class ConfigError(MolqiError, ValueError):
    """Invalid experiment configuration (unknown key, bad type, bad value)."""


class NumericalError(MolqiError):
    """A computation could not be carried out to the required accuracy."""


class DomainError(NumericalError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class PreconditionError(NumericalError, ValueError):
    """Input violates a documented precondition (normalization, unitarity, bounds)."""


class AccuracyError(NumericalError):
    """Grid too coarse or too small to resolve the requested quantity."""


class ValidityError(NumericalError):
    """An approximation was used outside its range of validity."""


class DivergenceError(NumericalError):
    """No steady state exists (gain at or above loss)."""
