"""Cooperative fluorescence of two receding two-level fragments.

A single excitation shared by the two atoms sits in the Dicke triplet
|1,0> or singlet |0,0>. As the atoms separate, the cooperative part of
the decay rate rings with the interatomic phase xi = k R(t) = xi_dot t.
All rates are returned in units of the single-atom rate gamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, PreconditionError
from .numerics import sine_integral

# transition type -> coefficient in front of the cumulative cooperative integral
_COEFF = {0: 1.5, 1: 0.75}
_SERIES_XI = 0.5


@dataclass(frozen=True)
class DickeLabel:
    s: int
    s_z: int

    def __post_init__(self):
        if (self.s, self.s_z) not in {(0, 0), (1, -1), (1, 0), (1, 1)}:
            raise PreconditionError(f"invalid Dicke label |{self.s},{self.s_z}>")

    @property
    def sign(self) -> int:
        """+1 for the superradiant triplet, -1 for the subradiant singlet (single excitation)."""
        if self.s_z != 0:
            raise PreconditionError("only the single-excitation states |1,0> and |0,0> emit cooperatively here")
        return 1 if self.s == 1 else -1


@dataclass(frozen=True)
class TransitionSpec:
    parity: str
    molecular_spin: str
    delta_lambda: int
    gamma: float
    xi_dot: float

    def __post_init__(self):
        if self.parity not in ("u", "g"):
            raise PreconditionError("parity must be 'u' or 'g'")
        if self.molecular_spin not in ("singlet", "triplet"):
            raise PreconditionError("molecular_spin must be 'singlet' or 'triplet'")
        if self.delta_lambda not in (0, 1):
            raise PreconditionError("delta_lambda must be 0 or 1")
        if not self.gamma > 0 or not self.xi_dot >= 0:
            raise PreconditionError("need gamma > 0 and xi_dot >= 0")

    @property
    def dicke(self) -> DickeLabel:
        return dicke_from_symmetry(self.parity, self.molecular_spin)


@dataclass(frozen=True)
class EmissionCurve:
    """Rate samples in units of gamma; ``gamma`` converts them to probability per time.

    ``gamma`` is 0 for curves with decay switched off: the shape is kept
    but nothing is emitted on the time scale of the ringing.
    """

    t: np.ndarray
    rate: np.ndarray
    cumulative: np.ndarray
    gamma: float
    xi: np.ndarray | None = None
    population: np.ndarray | None = None
    anomalies: tuple = field(default=())

    @property
    def ringing(self) -> np.ndarray:
        """Rate per remaining population, 1 +- gamma_coop/gamma."""
        return self.rate / self.population


def dicke_from_symmetry(parity: str, molecular_spin: str) -> DickeLabel:
    if parity not in ("u", "g") or molecular_spin not in ("singlet", "triplet"):
        raise PreconditionError("unknown parity or molecular spin")
    triplet_state = (parity == "u") == (molecular_spin == "singlet")
    return DickeLabel(1, 0) if triplet_state else DickeLabel(0, 0)


def _oscillatory(xi: np.ndarray) -> np.ndarray:
    """cos(xi)/xi - sin(xi)/xi^2."""
    return np.cos(xi) / xi - np.sin(xi) / xi**2


def _series(xi: np.ndarray, coeffs) -> np.ndarray:
    x2 = xi * xi
    out = np.zeros_like(xi)
    for c in reversed(coeffs):
        out = out * x2 + c
    return out


# Taylor coefficients in xi^2 (exact rationals) for the small-xi branch
_N_SERIES = 12
_SI_OVER_X = [(-1) ** n / ((2 * n + 1) * math.factorial(2 * n + 1)) for n in range(_N_SERIES)]
# (cos x / x - sin x / x^2) / x
_OSC_OVER_X = [(-1) ** (n + 1) * (2 * n + 2) / math.factorial(2 * n + 3) for n in range(_N_SERIES)]
# (sin x - x cos x) / x^3
_J1_OVER_X = [(-1) ** n * (2 * n + 2) / math.factorial(2 * n + 3) for n in range(_N_SERIES)]
_SINC = [(-1) ** n / math.factorial(2 * n + 1) for n in range(_N_SERIES)]


def _as_xi(xi):
    arr = np.asarray(xi, dtype=float)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise DomainError("xi must be finite and non-negative")
    return arr


def cumulative_factor(xi, delta_lambda: int):
    """F(xi) with int_0^t gamma_coop dt' = (gamma / xi_dot) * c * F(xi)."""
    xi = _as_xi(xi)
    sign = 1.0 if delta_lambda == 0 else -1.0
    small = xi < _SERIES_XI
    xs = np.where(small, 1.0, xi)
    big = sine_integral(xs) + sign * _oscillatory(xs)
    ser = xi * (_series(xi, _SI_OVER_X) + sign * _series(xi, _OSC_OVER_X))
    out = np.where(small, ser, big)
    return out if out.ndim else float(out)


def averaged_rate(xi, delta_lambda: int, sign: int, gamma: float = 1.0):
    """gamma +- (1/t) int_0^t gamma_coop dt' as a function of xi = xi_dot t."""
    if delta_lambda not in _COEFF or sign not in (1, -1):
        raise PreconditionError("delta_lambda must be 0/1 and sign +-1")
    xi = _as_xi(xi)
    c = _COEFF[delta_lambda]
    small = xi < _SERIES_XI
    xs = np.where(small, 1.0, xi)
    ratio_big = cumulative_factor(xs, delta_lambda) / xs
    d = 1.0 if delta_lambda == 0 else -1.0
    ratio_small = _series(xi, _SI_OVER_X) + d * _series(xi, _OSC_OVER_X)
    ratio = np.where(small, ratio_small, ratio_big)
    out = gamma * (1.0 + sign * c * ratio)
    return out if out.ndim else float(out)


def instantaneous_rate(xi, delta_lambda: int, gamma: float = 1.0):
    """Cooperative rate gamma_coop(xi), the xi-derivative of the cumulative form."""
    if delta_lambda not in _COEFF:
        raise PreconditionError("delta_lambda must be 0 or 1")
    xi = _as_xi(xi)
    small = xi < _SERIES_XI
    xs = np.where(small, 1.0, xi)
    j1 = np.where(small, _series(xi, _J1_OVER_X), (np.sin(xs) - xs * np.cos(xs)) / xs**3)
    if delta_lambda == 0:
        out = 3.0 * j1
    else:
        sinc = np.where(small, _series(xi, _SINC), np.sin(xs) / xs)
        out = 1.5 * (sinc - j1)
    out = gamma * out
    return out if out.ndim else float(out)


def _population(xi, spec: TransitionSpec, sign: int, decay: bool):
    if not decay:
        return np.ones_like(xi)
    g = spec.gamma / spec.xi_dot
    return np.exp(-g * (xi + sign * _COEFF[spec.delta_lambda] * cumulative_factor(xi, spec.delta_lambda)))


def emission_curve(spec: TransitionSpec, t_grid, decay: bool = True) -> EmissionCurve:
    """Emission rate P'(t)/gamma for a pair prepared in the Dicke state of ``spec``.

    With ``decay=False`` the population stays at one and the curve shows
    the bare ringing (the gamma/xi_dot -> 0 limit).
    """
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size < 2 or t[0] != 0 or np.any(np.diff(t) <= 0):
        raise PreconditionError("t_grid must be ascending from 0")
    sign = spec.dicke.sign
    if spec.xi_dot == 0:
        # atoms at rest: the static Dicke rate 1 + sign applies throughout
        rate_coop = np.full_like(t, float(sign))
        xi = np.zeros_like(t)
        rho = np.exp(-spec.gamma * (1 + sign) * t) if decay else np.ones_like(t)
    else:
        xi = spec.xi_dot * t
        rate_coop = sign * instantaneous_rate(xi, spec.delta_lambda)
        rho = _population(xi, spec, sign, decay)
    rate = (1.0 + rate_coop) * rho
    anomalies = tuple(float(x) for x in xi[rate < 0]) if np.any(rate < 0) else ()
    gamma_eff = spec.gamma if decay else 0.0
    return EmissionCurve(t, rate, 1.0 - rho, gamma_eff, xi, rho, anomalies)


def emitted_probability(spec: TransitionSpec, t_end: float, decay: bool = True) -> float:
    """int_0^t_end P'(t) dt by adaptive quadrature of the closed-form rate."""
    if not decay:
        return 0.0
    sign = spec.dicke.sign

    def f(t):
        if spec.xi_dot == 0:
            return spec.gamma * (1 + sign) * math.exp(-spec.gamma * (1 + sign) * t)
        xi = spec.xi_dot * t
        rate = 1.0 + sign * instantaneous_rate(xi, spec.delta_lambda)
        return spec.gamma * rate * float(_population(np.array(xi), spec, sign, True))

    n_osc = spec.xi_dot * t_end / (2 * math.pi)
    val, _ = quad(f, 0.0, t_end, epsabs=1e-13, epsrel=1e-12, limit=max(200, int(20 * n_osc)))
    return float(val)


def ringing_period(xi: np.ndarray, rate: np.ndarray, xi_min: float) -> float:
    """Mean spacing in xi of local maxima of ``rate`` beyond ``xi_min``."""
    xi = np.asarray(xi)
    rate = np.asarray(rate)
    interior = (rate[1:-1] > rate[:-2]) & (rate[1:-1] >= rate[2:])
    idx = np.nonzero(interior)[0] + 1
    idx = idx[xi[idx] >= xi_min]
    if idx.size < 2:
        raise PreconditionError("fewer than two ringing maxima in the window")
    # parabolic refinement of each maximum
    peaks = []
    for i in idx:
        y0, y1, y2 = rate[i - 1], rate[i], rate[i + 1]
        h = xi[i + 1] - xi[i]
        denom = y0 - 2 * y1 + y2
        peaks.append(xi[i] + (0.5 * h * (y0 - y2) / denom if denom != 0 else 0.0))
    return float(np.mean(np.diff(peaks)))
