"""Strang-split Fourier propagation of a 1D wavefunction (hbar = 1)."""

from __future__ import annotations

import numpy as np

from ..errors import AccuracyError, PreconditionError
from .grids import ComplexGrid1D

# fraction of |psi(k)|^2 tolerated in the outer tenth of the momentum band
ALIAS_TOL = 1e-6
EDGE_FRACTION = 0.1


def momentum_grid(psi: ComplexGrid1D) -> np.ndarray:
    return 2.0 * np.pi * np.fft.fftfreq(psi.n, d=psi.dx)


def edge_momentum_fraction(psi: ComplexGrid1D) -> float:
    k = momentum_grid(psi)
    prob = np.abs(np.fft.fft(psi.samples)) ** 2
    k_nyq = np.pi / psi.dx
    edge = np.abs(k) > (1.0 - EDGE_FRACTION) * k_nyq
    return float(prob[edge].sum() / prob.sum())


def _check_aliasing(psi: ComplexGrid1D, when: str) -> None:
    frac = edge_momentum_fraction(psi)
    if frac > ALIAS_TOL:
        raise AccuracyError(
            f"momentum support reaches the Nyquist edge {when} propagation "
            f"(edge fraction {frac:.2e}); refine dx"
        )


def split_step_propagate(
    psi: ComplexGrid1D,
    potential,
    mass: float,
    dt: float,
    steps: int,
) -> ComplexGrid1D:
    """Propagate ``psi`` by ``steps`` Strang steps of length ``dt`` (dt < 0 runs backwards).

    ``potential`` is either an array sampled on the grid of ``psi`` or a
    callable V(x).
    """
    if mass <= 0:
        raise PreconditionError("mass must be positive")
    if steps < 0:
        raise PreconditionError("steps must be non-negative")
    x = psi.x
    v = np.asarray(potential(x) if callable(potential) else potential, dtype=float)
    if v.shape != x.shape:
        raise PreconditionError("potential must be sampled on the wavefunction grid")
    _check_aliasing(psi, "before")

    k = momentum_grid(psi)
    half_v = np.exp(-0.5j * dt * v)
    kinetic = np.exp(-1j * dt * k**2 / (2.0 * mass))

    out = psi.samples.copy()
    out *= half_v
    for i in range(steps):
        out = np.fft.ifft(kinetic * np.fft.fft(out))
        # merge consecutive half potential steps
        out *= half_v if i == steps - 1 else half_v * half_v
    result = psi.with_samples(out)
    _check_aliasing(result, "after")
    return result
