"""Photon-number (diagonal) sector of a gain/loss cavity master equation.

    dp_n/dt = gain [n p_{n-1} - (n+1) p_n] + loss [(n+1) p_{n+1} - n p_n]

truncated to n < N with a reflecting top level, so total probability is
conserved exactly by the generator.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import expm

from ..errors import AccuracyError, DivergenceError, PreconditionError

LEAKAGE_TOL = 1e-8


def generator(n_levels: int, gain: float, loss: float) -> np.ndarray:
    """Tridiagonal rate matrix Q with dp/dt = Q p."""
    n = np.arange(n_levels, dtype=float)
    q = np.zeros((n_levels, n_levels))
    up = gain * (n + 1.0)  # n -> n+1
    down = loss * n  # n -> n-1
    up[-1] = 0.0
    idx = np.arange(n_levels)
    q[idx[1:], idx[:-1]] = up[:-1]
    q[idx[:-1], idx[1:]] = down[1:]
    q[idx, idx] = -(up + down)
    return q


def birth_death_lindblad(p, gain: float, loss: float, t):
    """Evolve the distribution ``p`` for time ``t`` (scalar or ascending array of times).

    Returns one distribution for scalar ``t`` and a (len(t), N) array otherwise.
    """
    p0 = np.asarray(p, dtype=float)
    if p0.ndim != 1 or p0.size < 2:
        raise PreconditionError("p must be a 1D distribution over at least two levels")
    if np.any(p0 < 0) or abs(p0.sum() - 1.0) > 1e-9:
        raise PreconditionError("p must be a normalized probability vector")
    if gain < 0 or loss < 0:
        raise PreconditionError("rates must be non-negative")
    if gain >= loss:
        raise DivergenceError(f"gain {gain} >= loss {loss}: photon number grows without bound")

    times = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(times < 0) or np.any(np.diff(times) < 0):
        raise PreconditionError("times must be non-negative and ascending")
    q = generator(p0.size, gain, loss)

    out = np.empty((times.size, p0.size))
    current = p0
    t_prev = 0.0
    for i, ti in enumerate(times):
        current = expm(q * (ti - t_prev)) @ current
        current = np.clip(current, 0.0, None)
        current /= current.sum()
        out[i] = current
        t_prev = ti
    if np.any(out[:, -1] > LEAKAGE_TOL):
        raise AccuracyError(
            f"truncation leakage {out[:, -1].max():.2e} in the top Fock level; raise N"
        )
    return out[0] if np.ndim(t) == 0 else out


def steady_state_distribution(n_levels: int, gain: float, loss: float) -> np.ndarray:
    """Detailed-balance geometric distribution truncated to ``n_levels``."""
    if gain >= loss:
        raise DivergenceError("no steady state for gain >= loss")
    q = gain / loss
    p = q ** np.arange(n_levels)
    return p / p.sum()


def mean_photon_number(p) -> float:
    p = np.asarray(p, dtype=float)
    return float(np.dot(np.arange(p.size), p))
