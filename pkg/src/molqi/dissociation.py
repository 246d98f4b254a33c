"""Raman-dissociation wavepacket and breathing of EPR correlations in traps.

The relative-motion amplitude of the receding fragments is an outgoing
spherical wave with a causal edge at r = v t, modulated by the Rabi
envelope sin(Omega_eff (t - r/v) / 2). Only the s and d partial waves are
kept. Units: hbar = 1, relative wavenumber k, relative velocity v, so the
reduced mass is k / v and the packet-centre energy is E = k v / 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.signal import zoom_fft

from .errors import DomainError, PreconditionError, ValidityError
from .gaussian_epr import TwoParticleGaussian

_Y00 = math.sqrt(1.0 / (4.0 * math.pi))
_Y20 = math.sqrt(5.0 / (4.0 * math.pi))


@dataclass(frozen=True)
class RamanParams:
    omega_eff: float
    v: float
    k: float
    delta0: float = 0.0
    delta2: float = 0.0

    def __post_init__(self):
        if not (self.omega_eff > 0 and self.v > 0 and self.k > 0):
            raise PreconditionError("omega_eff, v and k must be positive")

    @property
    def energy(self) -> float:
        return 0.5 * self.k * self.v

    @property
    def envelope_wavenumber(self) -> float:
        """Spatial frequency of the Rabi envelope along r."""
        return self.omega_eff / (2.0 * self.v)


@dataclass(frozen=True)
class TrapParams:
    omega: float
    x0: float
    M: float
    mu: float
    v_recede: float = 0.0

    def __post_init__(self):
        if not self.omega > 0:
            raise PreconditionError("trap frequency must be positive")
        if not (self.M > 0 and math.isclose(self.M, 4.0 * self.mu, rel_tol=1e-12)):
            raise PreconditionError("combined mass must equal four times the reduced mass")

    @classmethod
    def for_mass(cls, m: float, omega: float, x0: float = 0.0, v_recede: float = 0.0) -> "TrapParams":
        return cls(omega, x0, 2.0 * m, 0.5 * m, v_recede)


def _envelope(r, t, p: RamanParams):
    return np.sin(0.5 * p.omega_eff * (t - r / p.v))


def raman_wavepacket(r, theta, t: float, p: RamanParams):
    """Unnormalized relative-motion amplitude at (r, theta), time t."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("r must be positive")
    if t < 0:
        raise DomainError("t must be non-negative")
    mu = math.cos(theta)
    p2 = 0.5 * (3.0 * mu * mu - 1.0)
    radial = np.exp(1j * (p.k * r - p.energy * t)) / (2j * p.k * r)
    angular = _Y00 * np.exp(1j * p.delta0) + _Y20 * p2 * np.exp(1j * (p.delta2 - math.pi))
    out = angular * radial * _envelope(r, t, p)
    out = np.where(r <= p.v * t, out, 0.0)
    return out if out.ndim else complex(out)


def partial_wave_weights(theta: float) -> tuple[float, float]:
    """Real angular factors sqrt((2l+1)/4pi) P_l(cos theta) for l = 0, 2."""
    mu = math.cos(theta)
    return _Y00, _Y20 * 0.5 * (3.0 * mu * mu - 1.0)


def wavepacket_norm(p: RamanParams, t: float) -> float:
    """Integral of |phi|^2 over all space (the angular cross term integrates to zero)."""
    if t < 0:
        raise DomainError("t must be non-negative")
    x = p.omega_eff * t
    radial = (p.v / p.omega_eff) * 0.5 * (x - math.sin(x))  # int_0^{vt} sin^2(...) dr
    return 2.0 * radial / (4.0 * p.k**2)


def radial_profile(p: RamanParams, t: float, n: int = 4001) -> tuple[np.ndarray, np.ndarray]:
    """(r, r^2 |phi|^2) along theta = 0 on (0, v t]."""
    r = np.linspace(p.v * t / n, p.v * t, n)
    return r, r**2 * np.abs(raman_wavepacket(r, 0.0, t, p)) ** 2


def _developed(p: RamanParams, t: float) -> None:
    if t * p.omega_eff < 2.0 * math.pi * (1 - 1e-12):
        raise ValidityError("envelope not developed: need t * omega_eff >= 2 pi")


def _envelope_spectrum(q, p: RamanParams, t: float):
    """Fourier transform of u(r) = sin(kappa (L - r)) on [0, L] at offset q from k."""
    kap = p.envelope_wavenumber
    L = p.v * t
    q = np.asarray(q, dtype=float)

    def seg(a):
        b = a + q
        small = np.abs(b * L) < 1e-8
        bb = np.where(small, 1.0, b)
        val = np.where(small, L - 0.5j * b * L * L, (1.0 - np.exp(-1j * bb * L)) / (1j * bb))
        return np.exp(1j * a * L) * val

    return (seg(kap) - seg(-kap)) / 2j


def _band(p: RamanParams, n_q: int):
    # radial momenta q in (0, 2k), written as offsets from k
    return np.linspace(-p.k, p.k, n_q)


def _spread_from_density(q, w) -> float:
    mean = np.trapezoid(q * w, q) / np.trapezoid(w, q)
    return float(math.sqrt(np.trapezoid((q - mean) ** 2 * w, q) / np.trapezoid(w, q)))


def momentum_spread(p: RamanParams, t: float, n_q: int = 20001) -> float:
    """Standard deviation of the s-wave radial momentum over the band 0 < q < 2k.

    The radial function u = r phi_0 is proportional to exp(ikr) times the
    Rabi envelope on (0, v t]; its momentum density is the squared
    envelope transform shifted to k. The band excludes unphysical negative
    radial momenta and keeps the step at r -> 0 from making the second
    moment grid dependent.
    """
    _developed(p, t)
    q = _band(p, n_q)
    w = np.abs(_envelope_spectrum(q, p, t)) ** 2
    return _spread_from_density(q, w)


def momentum_spread_fft(p: RamanParams, t: float, n_q: int = 20001, n_r: int = 2**16) -> float:
    """Same quantity from a discrete Fourier transform of the s-wave radial function on a grid.

    The transform is evaluated on the q nodes used by :func:`momentum_spread`
    (chirp-z zoom), so the two estimators differ only by the sampling of u(r).
    """
    _developed(p, t)
    L = p.v * t
    r = np.linspace(0.0, L, n_r)
    dr = r[1] - r[0]
    if 2.0 * p.k >= math.pi / dr:
        raise ValidityError("radial grid too coarse for the band 0 < q < 2k")
    # demodulate exp(ikr) so the band maps to offsets in (-k, k)
    u = _envelope(r, t, p).astype(complex)
    u[[0, -1]] *= 0.5
    f = p.k / (2.0 * math.pi)
    spec = zoom_fft(u * dr, [-f, f], m=n_q, fs=1.0 / dr, endpoint=True)
    return _spread_from_density(_band(p, n_q), np.abs(spec) ** 2)


def harmonic_confinement_evolve(state: TwoParticleGaussian, trap: TrapParams, t: float) -> TwoParticleGaussian:
    """Evolve both collective modes in the double-parabolic trap for time t."""
    if not math.isclose(trap.M, 2.0 * state.mass, rel_tol=1e-12):
        raise PreconditionError("trap masses do not match the particle mass")
    if not all(math.isfinite(v) for v in (state.cm.var_x, state.cm.var_p, state.rel.var_x, state.rel.var_p)):
        raise PreconditionError("state variances must be finite")
    # the well offset x0 shifts the relative mean only; the covariances rotate
    return replace(
        state,
        t=state.t + t,
        cm=state.cm.harmonic(trap.omega, t),
        rel=state.rel.harmonic(trap.omega, t),
    )


def receding_well_frame(trap: TrapParams, t) -> tuple:
    """Well centres (x1, x2) when the wells separate at the relative speed v_recede."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("t must be non-negative")
    half = 0.5 * (trap.x0 + trap.v_recede * t)
    if half.ndim == 0:
        return float(half), -float(half)
    return half, -half
