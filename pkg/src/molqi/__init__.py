"""Numerical laboratory for entanglement in molecular dissociation and collisions (hbar = 1)."""

from . import cavity, collision, dissociation, fluorescence, gaussian_epr, numerics, superbeats, teleportation
from .errors import (
    AccuracyError,
    ConfigError,
    DivergenceError,
    DomainError,
    MolqiError,
    NumericalError,
    PreconditionError,
    ValidityError,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "ConfigError",
    "DivergenceError",
    "DomainError",
    "MolqiError",
    "NumericalError",
    "PreconditionError",
    "ValidityError",
    "cavity",
    "collision",
    "dissociation",
    "fluorescence",
    "gaussian_epr",
    "numerics",
    "superbeats",
    "teleportation",
]
