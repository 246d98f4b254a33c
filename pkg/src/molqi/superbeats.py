"""Fine-structure superbeats in the fluorescence of dissociating alkali dimers.

Two Omega = 0+ adiabatic states |I> (singlet Sigma) and |II> (triplet Pi)
are coupled by the fine-structure splitting delta. Dipole-dipole shifts
scale as C3 / R^3. After the nonadiabatic region the fluorescence carries
slow ringing from the cooperative rates G and fast beats at the splitting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import DomainError, PreconditionError, ValidityError
from .fluorescence import EmissionCurve

RateFunction = Union[float, Callable[[np.ndarray], np.ndarray]]

_SQRT2_3 = math.sqrt(2.0) / 3.0
LIMIT_OVERLAP = 0.999
LIMIT_RATIO = 1e3


@dataclass(frozen=True)
class AdiabaticModel:
    C3: float
    delta: float
    parity: str = "u"
    anisotropy: float = -0.5  # V_Pi / V_Sigma

    def __post_init__(self):
        if not self.delta >= 0:
            raise PreconditionError("fine-structure splitting must be non-negative")
        if self.parity not in ("u", "g"):
            raise PreconditionError("parity must be 'u' or 'g'")

    @property
    def w(self) -> int:
        return 1 if self.parity == "u" else -1

    def v_sigma(self, R):
        return -self.w * self.C3 / np.asarray(R, dtype=float) ** 3

    def v_pi(self, R):
        return self.anisotropy * self.v_sigma(R)


def _check_r(R):
    if np.any(np.asarray(R) <= 0):
        raise DomainError("internuclear distance must be positive")


def adiabatic_matrix(R: float, m: AdiabaticModel) -> np.ndarray:
    _check_r(R)
    off = _SQRT2_3 * m.delta
    return np.array([[float(m.v_sigma(R)), off], [off, float(m.v_pi(R)) - m.delta / 3.0]])


def adiabatic_eigen(R, m: AdiabaticModel):
    """Closed-form eigenpairs of the 2x2 matrix.

    Returns (E_minus, E_plus, v_minus, v_plus) with vectors in the
    (|I>, |II>) basis; vectorized over R.
    """
    _check_r(R)
    a = m.v_sigma(R)
    d = m.v_pi(R) - m.delta / 3.0
    b = _SQRT2_3 * m.delta
    mean = 0.5 * (a + d)
    half = 0.5 * (a - d)
    root = np.hypot(half, b)
    e_minus, e_plus = mean - root, mean + root
    # rotation angle tan(2 theta) = 2b / (a - d); half-angle formulas keep
    # the vectors exact when b = 0 and avoid cancellation otherwise
    safe = np.where(root > 0, root, 1.0)
    cos2, sin2 = np.where(root > 0, half / safe, 1.0), np.where(root > 0, b / safe, 0.0)
    big_c = cos2 >= 0
    big = np.sqrt(0.5 * (1.0 + np.abs(cos2)))
    small = 0.5 * sin2 / big
    c, s = np.where(big_c, big, small), np.where(big_c, small, big)
    v_plus = np.stack([c, s], axis=-1)
    v_minus = np.stack([-s, c], axis=-1)
    # sign convention: first component of |+> and of |-> non-negative where possible
    flip = v_minus[..., 0] < 0
    v_minus = np.where(flip[..., None], -v_minus, v_minus)
    return e_minus, e_plus, v_minus, v_plus


@dataclass(frozen=True)
class EigenLimits:
    R_small: float
    R_large: float
    small_minus: str  # basis state |-> correlates to at short range
    small_plus: str
    large_minus: np.ndarray
    large_plus: np.ndarray
    overlaps: dict


LARGE_R_MINUS = np.array([1.0, -math.sqrt(2.0)]) / math.sqrt(3.0)
LARGE_R_PLUS = np.array([math.sqrt(2.0), 1.0]) / math.sqrt(3.0)


def eigenpair_limits(m: AdiabaticModel) -> EigenLimits:
    """Diagonalize where |V|/delta = 1e3 and delta/|V| = 1e3 and compare with the limit vectors."""
    if m.C3 == 0:
        raise PreconditionError("C3 must be non-zero")
    if m.delta == 0:
        raise PreconditionError("delta must be positive for the large-R limit")
    split = abs(m.C3 * (1.0 - m.anisotropy))  # |V| R^3
    if split == 0:
        raise PreconditionError("V_Sigma - V_Pi vanishes identically")
    r_small = (split / (LIMIT_RATIO * m.delta)) ** (1 / 3)
    r_large = (LIMIT_RATIO * split / m.delta) ** (1 / 3)

    _, _, vm_s, vp_s = (np.asarray(x) for x in adiabatic_eigen(r_small, m))
    basis = {"I": np.array([1.0, 0.0]), "II": np.array([0.0, 1.0])}
    small_minus = max(basis, key=lambda k: abs(basis[k] @ vm_s))
    small_plus = max(basis, key=lambda k: abs(basis[k] @ vp_s))

    _, _, vm_l, vp_l = (np.asarray(x) for x in adiabatic_eigen(r_large, m))
    overlaps = {
        "small_minus": abs(basis[small_minus] @ vm_s),
        "small_plus": abs(basis[small_plus] @ vp_s),
        "large_minus": abs(LARGE_R_MINUS @ vm_l),
        "large_plus": abs(LARGE_R_PLUS @ vp_l),
    }
    if min(overlaps.values()) < LIMIT_OVERLAP:
        raise ValidityError(f"asymptotic limits not reached: {overlaps}")
    sgn_m = 1.0 if vm_l @ LARGE_R_MINUS >= 0 else -1.0
    sgn_p = 1.0 if vp_l @ LARGE_R_PLUS >= 0 else -1.0
    return EigenLimits(r_small, r_large, small_minus, small_plus, sgn_m * vm_l, sgn_p * vp_l, overlaps)


@dataclass(frozen=True)
class SuperbeatParams:
    A: float
    phi: float
    t_D: float
    G_plus: RateFunction
    G_minus: RateFunction
    G_c: RateFunction
    gamma: float
    eps: float
    rho_pp: float
    rho_mm: float

    def __post_init__(self):
        if not self.gamma > 0:
            raise PreconditionError("gamma must be positive")
        if self.rho_pp < 0 or self.rho_mm < 0 or self.rho_pp + self.rho_mm > 1 + 1e-12:
            raise PreconditionError("populations must be non-negative with sum <= 1")
        if not 0 <= self.A <= 2 * math.sqrt(self.rho_pp * self.rho_mm) + 1e-12:
            raise PreconditionError("coherence amplitude A exceeds 2 sqrt(rho_pp rho_mm)")


def _sample(G: RateFunction, t: np.ndarray) -> np.ndarray:
    return np.asarray(G(t), dtype=float) * np.ones_like(t) if callable(G) else np.full_like(t, float(G))


def _integral(G: RateFunction, t: np.ndarray, t0: float) -> np.ndarray:
    """int_{t0}^t G dt' on the grid (exact for constants)."""
    if not callable(G):
        return float(G) * (t - t0)
    return cumulative_trapezoid(_sample(G, t), t, initial=0.0)


def emission_rate_superbeats(t_grid, p: SuperbeatParams) -> EmissionCurve:
    """Emission rate P'(t)/gamma after the coupling region, to first order in gamma/delta."""
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size < 2 or np.any(np.diff(t) <= 0):
        raise PreconditionError("t_grid must be ascending")
    if not math.isclose(t[0], p.t_D, rel_tol=0, abs_tol=1e-12 * max(1.0, abs(p.t_D))):
        raise PreconditionError("t_grid must start at t_D")
    tau = t - p.t_D
    gp, gm, gc = (_sample(G, t) for G in (p.G_plus, p.G_minus, p.G_c))
    ip, im = _integral(p.G_plus, t, p.t_D), _integral(p.G_minus, t, p.t_D)
    pop_p = p.rho_pp * np.exp(-p.gamma * (tau + ip))
    pop_m = p.rho_mm * np.exp(-p.gamma * (tau + im))
    coh = p.A * np.cos(p.eps * tau + p.phi) * np.exp(-p.gamma * (tau + ip + im))
    rate = (1 + gp) * pop_p + (1 + gm) * pop_m + gc * coh
    cumulative = p.gamma * cumulative_trapezoid(rate, t, initial=0.0)
    return EmissionCurve(t, rate, cumulative, p.gamma, None, pop_p + pop_m)


def population_integrals(t_end: float, p: SuperbeatParams) -> float:
    """Emitted probability of the two population terms up to t_end (constant G only)."""
    if callable(p.G_plus) or callable(p.G_minus):
        raise PreconditionError("closed form needs constant G_plus and G_minus")
    tau = t_end - p.t_D
    return sum(
        rho * (1.0 - math.exp(-p.gamma * (1.0 + G) * tau))
        for rho, G in ((p.rho_pp, p.G_plus), (p.rho_mm, p.G_minus))
    )


def initial_rate(w_parity: int, A: float, phi: float) -> float:
    if w_parity not in (1, -1):
        raise PreconditionError("w must be +1 (u) or -1 (g)")
    if abs(A) > 1:
        raise PreconditionError("|A| must not exceed 1")
    return 1.0 + w_parity * A * math.cos(phi)


def beat_spectrum(curve: EmissionCurve) -> tuple[np.ndarray, np.ndarray]:
    """(angular frequency, amplitude) of the mean-removed, Hann-windowed rate."""
    t = curve.t
    dt = np.diff(t)
    if not np.allclose(dt, dt[0], rtol=1e-9):
        raise PreconditionError("beat spectrum needs a uniform time grid")
    y = (curve.rate - curve.rate.mean()) * np.hanning(t.size)
    amp = np.abs(np.fft.rfft(y))
    omega = 2.0 * np.pi * np.fft.rfftfreq(t.size, d=dt[0])
    return omega, amp


def dominant_beat(curve: EmissionCurve, omega_min: float) -> tuple[float, float]:
    """(peak angular frequency, bin width) above ``omega_min``."""
    omega, amp = beat_spectrum(curve)
    mask = omega >= omega_min
    if not mask.any():
        raise PreconditionError("omega_min above the Nyquist frequency")
    i = np.argmax(np.where(mask, amp, -np.inf))
    return float(omega[i]), float(omega[1] - omega[0])
