"""Sampled wavefunctions and probability spectra."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import PreconditionError

MIN_SAMPLES = 16


@dataclass(frozen=True, eq=False)
class ComplexGrid1D:
    """Wavefunction samples on the uniform grid ``x0 + dx * arange(n)``."""

    samples: np.ndarray
    x0: float
    dx: float

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=complex)
        if samples.ndim != 1 or samples.size < MIN_SAMPLES:
            raise PreconditionError(f"need a 1D array of at least {MIN_SAMPLES} samples")
        if not self.dx > 0:
            raise PreconditionError("grid spacing must be positive")
        if not np.all(np.isfinite(samples)):
            raise PreconditionError("samples must be finite")
        object.__setattr__(self, "samples", samples)

    @classmethod
    def from_function(cls, f, x: np.ndarray) -> "ComplexGrid1D":
        x = np.asarray(x, dtype=float)
        return cls(np.asarray(f(x), dtype=complex), float(x[0]), float(x[1] - x[0]))

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.samples.size)

    @property
    def n(self) -> int:
        return self.samples.size

    def norm(self) -> float:
        return float(np.sum(np.abs(self.samples) ** 2) * self.dx)

    def normalized(self) -> "ComplexGrid1D":
        return ComplexGrid1D(self.samples / np.sqrt(self.norm()), self.x0, self.dx)

    def with_samples(self, samples: np.ndarray) -> "ComplexGrid1D":
        return ComplexGrid1D(samples, self.x0, self.dx)

    def overlap(self, other: "ComplexGrid1D") -> complex:
        """<self|other> on a shared grid."""
        return complex(np.vdot(self.samples, other.samples) * self.dx)

    def mean(self) -> float:
        prob = np.abs(self.samples) ** 2
        return float(np.sum(self.x * prob) / np.sum(prob))

    def width(self) -> float:
        """Standard deviation of |psi(x)|^2."""
        prob = np.abs(self.samples) ** 2
        x = self.x
        mu = np.sum(x * prob) / np.sum(prob)
        return float(np.sqrt(np.sum((x - mu) ** 2 * prob) / np.sum(prob)))


@dataclass(frozen=True, eq=False)
class ComplexGrid2D:
    """Two-particle amplitude psi(x1, x2); axis 0 is x1, axis 1 is x2."""

    samples: np.ndarray
    dx1: float
    dx2: float
    x1_0: float = 0.0
    x2_0: float = 0.0

    def __post_init__(self):
        samples = np.asarray(self.samples)
        if not np.iscomplexobj(samples):
            samples = samples.astype(float)
        if samples.ndim != 2:
            raise PreconditionError("ComplexGrid2D needs a rectangular 2D array")
        if not (self.dx1 > 0 and self.dx2 > 0):
            raise PreconditionError("grid spacings must be positive")
        if not np.all(np.isfinite(samples)):
            raise PreconditionError("samples must be finite")
        object.__setattr__(self, "samples", samples)

    @classmethod
    def from_function(cls, f, x1: np.ndarray, x2: np.ndarray) -> "ComplexGrid2D":
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        vals = f(x1[:, None], x2[None, :])
        return cls(vals, float(x1[1] - x1[0]), float(x2[1] - x2[0]), float(x1[0]), float(x2[0]))

    @property
    def x1(self) -> np.ndarray:
        return self.x1_0 + self.dx1 * np.arange(self.samples.shape[0])

    @property
    def x2(self) -> np.ndarray:
        return self.x2_0 + self.dx2 * np.arange(self.samples.shape[1])

    def norm(self) -> float:
        return float(np.sum(np.abs(self.samples) ** 2) * self.dx1 * self.dx2)

    def normalized(self) -> "ComplexGrid2D":
        return ComplexGrid2D(
            self.samples / np.sqrt(self.norm()), self.dx1, self.dx2, self.x1_0, self.x2_0
        )


@dataclass(frozen=True, eq=False)
class ProbabilitySpectrum:
    """Non-negative eigenvalues in descending order summing to one."""

    eigenvalues: np.ndarray = field(default_factory=lambda: np.array([1.0]))

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues, dtype=float).ravel()
        if ev.size == 0:
            raise PreconditionError("empty spectrum")
        if np.any(ev < 0):
            raise PreconditionError("negative eigenvalue in spectrum")
        if abs(ev.sum() - 1.0) > 1e-9:
            raise PreconditionError(f"spectrum sums to {ev.sum():.12g}, not 1")
        object.__setattr__(self, "eigenvalues", np.sort(ev)[::-1])

    def __len__(self) -> int:
        return self.eigenvalues.size

    def purity(self) -> float:
        return float(np.sum(self.eigenvalues**2))

    def effective_rank(self) -> float:
        """1 / sum(eps_n^2); equals the Schmidt number K for pure bipartite states."""
        return 1.0 / self.purity()
