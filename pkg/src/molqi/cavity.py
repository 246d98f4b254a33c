"""Cavity field pumped by dissociated atom pairs: entanglement-controlled temperature.

Pairs enter in a two-qubit state rho (basis |ee>, |eg>, |ge>, |gg>) with
inversion w = 2 (rho_11 - rho_44) and coherence C = 2 Re rho_23. The
photon-number dynamics is a birth-death chain whose detailed balance
fixes the steady state and an effective temperature T_c. Temperatures are
reported as T_c / T, with T set by the thermal occupation n_bar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, PreconditionError
from .numerics import birth_death_lindblad, mean_photon_number

_BOUNDARY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DimerDensity4:
    rho: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.rho, dtype=complex)
        if r.shape != (4, 4):
            raise PreconditionError("density matrix must be 4x4")
        if not np.allclose(r, r.conj().T, atol=1e-12):
            raise PreconditionError("density matrix must be Hermitian")
        if abs(np.trace(r).real - 1.0) > 1e-10:
            raise PreconditionError("density matrix must have unit trace")
        if np.linalg.eigvalsh(r).min() < -1e-10:
            raise PreconditionError("density matrix must be positive semidefinite")
        object.__setattr__(self, "rho", r)

    @classmethod
    def pure(cls, amplitudes) -> "DimerDensity4":
        v = np.asarray(amplitudes, dtype=complex)
        v = v / np.linalg.norm(v)
        return cls(np.outer(v, v.conj()))

    @classmethod
    def named(cls, name: str) -> "DimerDensity4":
        s = 1 / math.sqrt(2)
        table = {
            "psi_plus": [0, s, s, 0],
            "psi_minus": [0, s, -s, 0],
            "ee": [1, 0, 0, 0],
            "gg": [0, 0, 0, 1],
        }
        if name == "rho_mix":
            return cls(np.diag([0, 0.5, 0.5, 0]).astype(complex))
        if name not in table:
            raise PreconditionError(f"unknown state {name!r}")
        return cls.pure(table[name])


@dataclass(frozen=True)
class CavityParams:
    g_eff: float
    eta: float
    n_bar: float
    nu: float = 1.0

    def __post_init__(self):
        if self.g_eff < 0 or not self.eta > 0 or self.n_bar < 0:
            raise PreconditionError("need g_eff >= 0, eta > 0, n_bar >= 0")


@dataclass(frozen=True)
class CavitySteadyState:
    n_ss: float
    Tc_over_T: float
    R_e: float
    R_d: float


def inversion_coherence(state: DimerDensity4) -> tuple[float, float, bool]:
    r = state.rho
    w = 2.0 * float((r[0, 0] - r[3, 3]).real)
    C = 2.0 * float(r[1, 2].real)
    entangled = abs(r[1, 2]) ** 2 > float((r[0, 0] * r[3, 3]).real)
    return w, C, bool(entangled)


def coherence_bound(w: float) -> float:
    if abs(w) > 2 + 1e-12:
        raise PreconditionError("|w| must not exceed 2")
    return 1.0 - abs(w) / 2.0


def pumping_factors(w: float, C: float, convention: str = "balanced") -> tuple[float, float]:
    """(r_plus, r_minus). ``balanced``: 1 + C +- w/2; ``verbatim``: 1 + C +- w."""
    if convention == "balanced":
        return 1.0 + C + 0.5 * w, 1.0 + C - 0.5 * w
    if convention == "verbatim":
        return 1.0 + C + w, 1.0 + C - w
    raise PreconditionError(f"unknown convention {convention!r}")


def rate_coefficients(w: float, C: float, p: CavityParams, convention: str = "balanced") -> tuple[float, float]:
    """(R_e, R_d): photon emission and absorption rates per photon-number step."""
    if abs(C) > coherence_bound(w) + 1e-12:
        raise PreconditionError(f"|C| = {abs(C)} exceeds the bound 1 - |w|/2 = {coherence_bound(w)}")
    r_plus, r_minus = pumping_factors(w, C, convention)
    if min(r_plus, r_minus) < -1e-12:
        raise PreconditionError(f"pumping factors ({r_plus:.6g}, {r_minus:.6g}) must be non-negative")
    r_plus, r_minus = max(r_plus, 0.0), max(r_minus, 0.0)
    return 0.5 * p.g_eff * r_plus + p.eta * p.n_bar, 0.5 * p.g_eff * r_minus + p.eta * (p.n_bar + 1.0)


def heating_margin(w: float, C: float, n_bar: float) -> float:
    """1 + C + (n_bar + 1/2) w; its sign decides heating when g_eff > 0."""
    return 1.0 + C + (n_bar + 0.5) * w


def heating_condition(w: float, C: float, n_bar: float) -> bool:
    return heating_margin(w, C, n_bar) > _BOUNDARY_TOL


def _temperature_ratio(R_e: float, R_d: float, n_bar: float, on_boundary: bool) -> float:
    if on_boundary:
        return 1.0
    if n_bar == 0:
        return math.inf if R_e > 0 else 1.0
    if R_e == 0:
        return 0.0
    return math.log((n_bar + 1.0) / n_bar) / math.log(R_d / R_e)


def steady_state(w: float, C: float, p: CavityParams, convention: str = "balanced") -> CavitySteadyState:
    R_e, R_d = rate_coefficients(w, C, p, convention)
    if R_e >= R_d:
        raise DivergenceError(f"gain {R_e:.6g} >= loss {R_d:.6g}: above the maser threshold")
    n_ss = R_e / (R_d - R_e)
    if convention == "balanced":
        on_boundary = p.g_eff == 0 or abs(heating_margin(w, C, p.n_bar)) <= _BOUNDARY_TOL
    else:
        on_boundary = p.g_eff == 0 or abs(R_e * (p.n_bar + 1) - R_d * p.n_bar) <= _BOUNDARY_TOL * R_d
    return CavitySteadyState(n_ss, _temperature_ratio(R_e, R_d, p.n_bar, on_boundary), R_e, R_d)


def fock_levels(n_ss: float) -> int:
    """Truncation N >= 20 + 10 n_ss, large enough that the geometric tail is below 1e-12."""
    q = n_ss / (n_ss + 1.0)
    tail = math.ceil(math.log(1e-12) / math.log(q)) if q > 0 else 1
    return max(20 + int(math.ceil(10 * n_ss)), tail + 1)


def lindblad_steady_photon_number(w: float, C: float, p: CavityParams, convention: str = "balanced") -> float:
    """Long-time mean photon number from the truncated master equation, starting from vacuum."""
    R_e, R_d = rate_coefficients(w, C, p, convention)
    n_ss = steady_state(w, C, p, convention).n_ss
    levels = fock_levels(n_ss)
    p0 = np.zeros(levels)
    p0[0] = 1.0
    t_relax = 40.0 / (R_d - R_e)
    return mean_photon_number(birth_death_lindblad(p0, R_e, R_d, t_relax))


def _amplitude_damping(prob: float, n_bar: float = 0.0) -> list[np.ndarray]:
    """Single-atom Kraus operators in the (e, g) basis.

    Relaxation towards the thermal excited fraction n_bar / (2 n_bar + 1);
    n_bar = 0 is plain spontaneous decay.
    """
    down = (n_bar + 1.0) / (2.0 * n_bar + 1.0)
    up = 1.0 - down
    a, b = math.sqrt(1.0 - prob), math.sqrt(prob)
    ks = [
        math.sqrt(down) * np.array([[a, 0.0], [0.0, 1.0]]),
        math.sqrt(down) * np.array([[0.0, 0.0], [b, 0.0]]),
    ]
    if up > 0:
        ks += [
            math.sqrt(up) * np.array([[1.0, 0.0], [0.0, a]]),
            math.sqrt(up) * np.array([[0.0, b], [0.0, 0.0]]),
        ]
    return ks


def _relaxation(gamma: float, t: float, n_bar: float) -> float:
    if gamma < 0 or t < 0 or n_bar < 0:
        raise PreconditionError("gamma, t and n_bar must be non-negative")
    return -math.expm1(-(2.0 * n_bar + 1.0) * gamma * t)


def transit_decay_map(state: DimerDensity4, gamma: float, t: float, n_bar: float = 0.0) -> DimerDensity4:
    """Independent decay of both atoms for time t into a bath with occupation n_bar.

    For n_bar = 0 each atom is amplitude damped with probability 1 - exp(-gamma t).
    """
    ks = _amplitude_damping(_relaxation(gamma, t, n_bar), n_bar)
    # single-atom superoperator: rho'[i, j] = S[i, j, a, b] rho[a, b]
    sup = sum(np.einsum("ia,jb->ijab", k, k.conj()) for k in ks)
    r = state.rho.reshape(2, 2, 2, 2)  # rho[a, b, a', b'] with atom A first
    r = np.einsum("ijac,aXcY->iXjY", sup, r)
    r = np.einsum("ijbd,XbYd->XiYj", sup, r)
    out = r.reshape(4, 4)
    return DimerDensity4(0.5 * (out + out.conj().T))


def kraus_two_atom(gamma: float, t: float, n_bar: float = 0.0) -> list[np.ndarray]:
    ks = _amplitude_damping(_relaxation(gamma, t, n_bar), n_bar)
    return [np.kron(a, b) for a in ks for b in ks]


@dataclass(frozen=True)
class TemperatureCurve:
    gamma_t: np.ndarray
    Tc_over_T: np.ndarray
    above_threshold: np.ndarray


def temperature_curve(
    state: DimerDensity4, gamma_t, p: CavityParams, convention: str = "balanced", thermal_decay: bool = True
) -> TemperatureCurve:
    """T_c / T against gamma t for pairs that decay before pumping the cavity.

    With ``thermal_decay`` the atoms relax in the same environment as the
    cavity (occupation n_bar), so fully decayed pairs leave T_c = T.
    """
    gt = np.asarray(gamma_t, dtype=float)
    bath = p.n_bar if thermal_decay else 0.0
    ratios = np.empty_like(gt)
    flags = np.zeros(gt.shape, dtype=bool)
    for i, x in enumerate(gt):
        w, C, _ = inversion_coherence(transit_decay_map(state, 1.0, x, bath))
        try:
            ratios[i] = steady_state(w, C, p, convention).Tc_over_T
        except DivergenceError:
            ratios[i] = np.nan
            flags[i] = True
    return TemperatureCurve(gt, ratios, flags)
