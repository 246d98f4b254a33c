"""Bipartite Gaussian EPR states and their entanglement measures (hbar = 1).

The state factorizes into a centre-of-mass mode and a relative mode:

    x_cm  = (x1 + x2) / 2,   P = p1 + p2,        mass M  = 2m
    x_rel = x1 - x2,         p = (p1 - p2) / 2,  mass mu = m / 2

so that x1 = x_cm + x_rel/2 and p1 = P/2 + p. Each mode is a pure
Gaussian stored by its covariance (var_x, var_p, cov_xp); the two modes
are uncorrelated. At preparation both modes are unchirped minimum
uncertainty packets, Delta x * Delta P = 1/2 per mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import AccuracyError, PreconditionError
from .numerics import ComplexGrid2D, ProbabilitySpectrum, schmidt_spectrum, vn_entropy

# probability outside the sampled box per axis is below ~1e-10
_BOX_SIGMAS = 6.5
_MAX_GRID = 4096


@dataclass(frozen=True)
class ModeCovariance:
    """Second moments of one collective mode."""

    var_x: float
    var_p: float
    cov_xp: float
    mass: float

    @classmethod
    def minimum_uncertainty(cls, sigma_x: float, mass: float) -> "ModeCovariance":
        return cls(sigma_x**2, 1.0 / (4.0 * sigma_x**2), 0.0, mass)

    def free(self, t: float) -> "ModeCovariance":
        tm = t / self.mass
        return ModeCovariance(
            self.var_x + 2.0 * self.cov_xp * tm + self.var_p * tm**2,
            self.var_p,
            self.cov_xp + self.var_p * tm,
            self.mass,
        )

    def harmonic(self, omega: float, t: float) -> "ModeCovariance":
        """Rotate in phase space under 0.5 * mass * omega^2 * x^2."""
        mw = self.mass * omega
        c, s = math.cos(omega * t), math.sin(omega * t)
        vx = c * c * self.var_x + 2 * c * s * self.cov_xp / mw + s * s * self.var_p / mw**2
        vp = mw**2 * s * s * self.var_x - 2 * mw * c * s * self.cov_xp + c * c * self.var_p
        cxp = -mw * c * s * self.var_x + (c * c - s * s) * self.cov_xp + c * s * self.var_p / mw
        return ModeCovariance(vx, vp, cxp, self.mass)

    def gaussian_exponent(self) -> complex:
        """a such that psi(x) ~ exp(-a x^2) reproduces these moments (pure state)."""
        return complex(1.0 / (4.0 * self.var_x), -self.cov_xp / (2.0 * self.var_x))


@dataclass(frozen=True)
class TwoParticleGaussian:
    """Two particles of mass ``mass`` prepared with position widths ``dx_cm``, ``dx_rel``.

    ``t`` is the elapsed evolution time. ``cm``/``rel`` hold the current mode
    covariances; when omitted they are the free evolution of the
    prepared state over ``t``.
    """

    dx_cm: float
    dx_rel: float
    mass: float = 1.0
    t: float = 0.0
    cm: ModeCovariance | None = field(default=None, repr=False)
    rel: ModeCovariance | None = field(default=None, repr=False)

    def __post_init__(self):
        if not (self.dx_cm > 0 and self.dx_rel > 0 and self.mass > 0):
            raise PreconditionError("dx_cm, dx_rel and mass must be positive")
        if self.t < 0:
            raise PreconditionError("elapsed time must be non-negative")
        if self.cm is None:
            cm = ModeCovariance.minimum_uncertainty(self.dx_cm, 2.0 * self.mass).free(self.t)
            object.__setattr__(self, "cm", cm)
        if self.rel is None:
            rel = ModeCovariance.minimum_uncertainty(self.dx_rel, 0.5 * self.mass).free(self.t)
            object.__setattr__(self, "rel", rel)

    @classmethod
    def separable(cls, sigma: float, mass: float = 1.0) -> "TwoParticleGaussian":
        """Product of two minimum-uncertainty packets of width ``sigma``."""
        return cls(sigma / math.sqrt(2.0), sigma * math.sqrt(2.0), mass)

    # current collective widths
    @property
    def sigma_cm(self) -> float:
        return math.sqrt(self.cm.var_x)

    @property
    def sigma_rel(self) -> float:
        return math.sqrt(self.rel.var_x)

    @property
    def dp_cm(self) -> float:
        """Standard deviation of the total momentum p1 + p2."""
        return math.sqrt(self.cm.var_p)

    @property
    def dp_rel(self) -> float:
        """Standard deviation of the relative momentum (p1 - p2) / 2."""
        return math.sqrt(self.rel.var_p)

    def position_covariance(self) -> np.ndarray:
        a, b = self.cm.var_x, self.rel.var_x / 4.0
        return np.array([[a + b, a - b], [a - b, a + b]])

    def momentum_covariance(self) -> np.ndarray:
        a, b = self.cm.var_p / 4.0, self.rel.var_p
        return np.array([[a + b, a - b], [a - b, a + b]])

    def single_particle_covariance(self) -> np.ndarray:
        """Covariance of (x1, p1) after tracing out particle 2."""
        vx = self.cm.var_x + self.rel.var_x / 4.0
        vp = self.cm.var_p / 4.0 + self.rel.var_p
        cxp = 0.5 * (self.cm.cov_xp + self.rel.cov_xp)
        return np.array([[vx, cxp], [cxp, vp]])

    def amplitude(self, x1, x2):
        """psi(x1, x2), normalized in the continuum."""
        x_cm = 0.5 * (x1 + x2)
        x_rel = x1 - x2
        a_cm = self.cm.gaussian_exponent()
        a_rel = self.rel.gaussian_exponent()
        # |psi|^2 integrates to one: prefactor from each mode's Gaussian, Jacobian d(x_cm)d(x_rel) = dx1 dx2
        norm = (2 * math.pi * self.cm.var_x) ** -0.25 * (2 * math.pi * self.rel.var_x) ** -0.25
        return norm * np.exp(-a_cm * x_cm**2 - a_rel * x_rel**2)


@dataclass(frozen=True)
class EprMeasures:
    s: float
    K: float
    S: float
    base: str = "e"


@dataclass(frozen=True)
class GaussianEntropy:
    exact: float
    log_s: float
    spectrum: ProbabilitySpectrum = field(repr=False)


def _conditional_std(cov: np.ndarray) -> float:
    return math.sqrt(cov[0, 0] - cov[0, 1] ** 2 / cov[1, 1])


def conditional_variances(state: TwoParticleGaussian, a: float = 0.0) -> tuple[float, float]:
    """Standard deviations of P(x1 | x2 = a) and of P(p1 | p2 = a).

    For a Gaussian the conditional width does not depend on the
    conditioning value; ``a`` only shifts the conditional mean.
    Equivalently 1/Var(x1|x2) = 1/Var(x_rel) + 1/(4 Var(x_cm)).
    """
    del a
    return _conditional_std(state.position_covariance()), _conditional_std(
        state.momentum_covariance()
    )


def squeezing_parameter(state: TwoParticleGaussian) -> float:
    dx_c, dp_c = conditional_variances(state)
    return 1.0 / (2.0 * dx_c * dp_c)


def free_evolve(state: TwoParticleGaussian, t: float) -> TwoParticleGaussian:
    """Ballistic spreading of both collective modes for an extra time ``t``."""
    if t < 0:
        raise PreconditionError("free evolution time must be non-negative")
    return replace(state, t=state.t + t, cm=state.cm.free(t), rel=state.rel.free(t))


def schmidt_number(state: TwoParticleGaussian) -> float:
    """Unconditional over conditional single-particle momentum spread."""
    dp1 = math.sqrt(state.momentum_covariance()[0, 0])
    return dp1 / conditional_variances(state)[1]


def symplectic_eigenvalue(state: TwoParticleGaussian) -> float:
    """sqrt(det) of the (x1, p1) covariance; 1/2 for a separable pure state."""
    return math.sqrt(max(np.linalg.det(state.single_particle_covariance()), 0.25))


def entropy_covariance(state: TwoParticleGaussian, base: float = math.e) -> float:
    """Closed-form reduced-state entropy from the symplectic eigenvalue."""
    nu = symplectic_eigenvalue(state)
    hi, lo = nu + 0.5, nu - 0.5
    s = hi * math.log(hi) - (lo * math.log(lo) if lo > 0 else 0.0)
    return s / math.log(base)


def gaussian_ladder_spectrum(K: float, n_terms: int = 200) -> np.ndarray:
    """Geometric Schmidt spectrum (1-q) q^n of a two-mode Gaussian with inverse purity K.

    q is fixed by requiring sum eps_n^2 = (1-q)/(1+q) = 1/K.
    """
    if K < 1:
        raise PreconditionError("Schmidt number must be at least 1")
    q = (K - 1.0) / (K + 1.0)
    n = np.arange(n_terms)
    return (1.0 - q) * q**n


def ladder_entropy(K: float, base: float = math.e) -> float:
    """Entropy of the infinite geometric ladder with inverse purity K."""
    q = (K - 1.0) / (K + 1.0)
    if q <= 0:
        return 0.0
    s = -math.log(1.0 - q) - q * math.log(q) / (1.0 - q)
    return s / math.log(base)


def state_grid(state: TwoParticleGaussian, n: int | None = None) -> ComplexGrid2D:
    """Sample the state on a square box sized to hold all but ~1e-10 of the probability.

    The spacing must resolve the conditional width and the single-particle
    momentum spread; raises AccuracyError when ``n`` points cannot do both.
    """
    cov1 = state.single_particle_covariance()
    sx1, sp1 = math.sqrt(cov1[0, 0]), math.sqrt(cov1[1, 1])
    dx_c, _ = conditional_variances(state)
    half = _BOX_SIGMAS * sx1
    dx_needed = min(dx_c / 4.0, math.pi / (8.0 * sp1))
    n_needed = int(math.ceil(2 * half / dx_needed)) + 1
    if n is None:
        n = max(n_needed, 64)
        if n > _MAX_GRID:
            raise AccuracyError(
                f"grid of {n} points per axis needed to resolve both scales "
                f"(limit {_MAX_GRID}); ratio dx_cm/dx_rel too extreme"
            )
    elif n < n_needed:
        raise AccuracyError(f"{n} points per axis cannot resolve the state (need {n_needed})")
    x = np.linspace(-half, half, n)
    grid = ComplexGrid2D.from_function(state.amplitude, x, x)
    if np.allclose(grid.samples.imag, 0.0):
        grid = ComplexGrid2D(grid.samples.real, grid.dx1, grid.dx2, grid.x1_0, grid.x2_0)
    return grid.normalized()


def entropy_gaussian(
    state: TwoParticleGaussian, base: float = math.e, n: int | None = None
) -> GaussianEntropy:
    """Entropy from the numerical Schmidt spectrum plus the estimate log s."""
    spec = schmidt_spectrum(state_grid(state, n))
    s = squeezing_parameter(state)
    return GaussianEntropy(vn_entropy(spec, base), math.log(s) / math.log(base), spec)


def epr_measures(state: TwoParticleGaussian, base: float = math.e, numerical: bool = False) -> EprMeasures:
    """All three EPR-proximity measures; ``numerical`` selects the grid entropy."""
    S = entropy_gaussian(state, base).exact if numerical else entropy_covariance(state, base)
    return EprMeasures(
        squeezing_parameter(state), schmidt_number(state), S, "bits" if base == 2 else "nats"
    )
