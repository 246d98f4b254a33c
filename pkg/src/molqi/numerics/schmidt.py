"""Schmidt spectra and von Neumann entropy of bipartite pure states."""

from __future__ import annotations

import math

import numpy as np

from ..errors import PreconditionError
from .grids import ComplexGrid2D, ProbabilitySpectrum

NORM_TOL = 1e-8


def schmidt_spectrum(psi: ComplexGrid2D, *, norm_tol: float = NORM_TOL) -> ProbabilitySpectrum:
    """Squared singular values of the measure-weighted amplitude matrix.

    The grid measure enters as sqrt(dx1*dx2) so that the singular values are
    those of the continuum Hilbert-Schmidt operator.
    """
    norm = psi.norm()
    if abs(norm - 1.0) > norm_tol:
        raise PreconditionError(f"state norm {norm:.12g} differs from 1 by more than {norm_tol}")
    weighted = psi.samples * math.sqrt(psi.dx1 * psi.dx2)
    sv = np.linalg.svd(weighted, compute_uv=False)
    return spectrum_from_weights(sv**2)


def spectrum_from_weights(weights) -> ProbabilitySpectrum:
    """Renormalize non-negative weights into a :class:`ProbabilitySpectrum`."""
    w = np.clip(np.asarray(weights, dtype=float).ravel(), 0.0, None)
    total = w.sum()
    if not total > 0:
        raise PreconditionError("weights sum to zero")
    return ProbabilitySpectrum(w / total)


def vn_entropy(spec: ProbabilitySpectrum, base: float = math.e) -> float:
    """-sum eps log eps with 0 log 0 := 0. ``base`` is 2 or e."""
    if base not in (2, math.e):
        raise ValueError("base must be 2 or e")
    ev = spec.eigenvalues[spec.eigenvalues > 0]
    s = float(-np.sum(ev * np.log(ev)))
    s = max(s, 0.0)
    return s / math.log(2) if base == 2 else s
