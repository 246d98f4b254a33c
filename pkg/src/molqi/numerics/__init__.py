"""Numerical kernels used as independent oracles by the physics modules."""

from .grids import ComplexGrid1D, ComplexGrid2D, ProbabilitySpectrum
from .lindblad import birth_death_lindblad, mean_photon_number, steady_state_distribution
from .schmidt import schmidt_spectrum, spectrum_from_weights, vn_entropy
from .special import sine_integral
from .splitstep import split_step_propagate

__all__ = [
    "ComplexGrid1D",
    "ComplexGrid2D",
    "ProbabilitySpectrum",
    "birth_death_lindblad",
    "mean_photon_number",
    "schmidt_spectrum",
    "sine_integral",
    "spectrum_from_weights",
    "split_step_propagate",
    "steady_state_distribution",
    "vn_entropy",
]
