"""Entanglement generated by elastic 1D collisions on a double-delta barrier.

Units: hbar = 1 and the relative-motion equation is written as
psi'' + k^2 psi = g [delta(x - a) + delta(x + a)] psi, i.e. the reduced
mass is folded into the strength g (inverse length) and E_rel = k^2 when
the relative mass is taken as 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import AccuracyError, DomainError, PreconditionError, ValidityError
from .numerics import spectrum_from_weights, vn_entropy


@dataclass(frozen=True)
class DoubleDeltaPotential:
    strength: float
    a: float

    def __post_init__(self):
        if not self.a > 0:
            raise PreconditionError("half-spacing a must be positive")
        if not math.isfinite(self.strength):
            raise PreconditionError("strength must be finite")

    def spike_area(self, width: float) -> float:
        """Gaussian area A whose scattering matches a delta of strength g to first order in g*width.

        Across a spike of std w the wavefunction bends, which raises the
        effective strength to A (1 + A w / sqrt(pi)); solve that for A = g.
        The residual error is O(w^2).
        """
        c = width / math.sqrt(math.pi)
        disc = 1.0 + 4.0 * c * self.strength
        if disc <= 0:
            raise PreconditionError("spike too wide for this attractive strength")
        return self.strength if self.strength == 0 else (math.sqrt(disc) - 1.0) / (2.0 * c)

    def regularized(
        self, x: np.ndarray, width: float, relative_mass: float = 0.5, renormalized: bool = True
    ) -> np.ndarray:
        """Gaussians of std ``width`` at +-a with V = A / (2 mu) per spike.

        A is :meth:`spike_area` when ``renormalized``, else the bare strength g
        (whose scattering converges only linearly in ``width``).
        """
        area = self.spike_area(width) if renormalized else self.strength
        amp = area / (2.0 * relative_mass)
        norm = 1.0 / (math.sqrt(2 * math.pi) * width)
        return amp * norm * (
            np.exp(-0.5 * ((x - self.a) / width) ** 2) + np.exp(-0.5 * ((x + self.a) / width) ** 2)
        )


@dataclass(frozen=True)
class ScatteringAmplitudes:
    T: complex
    R: complex
    k: float

    @property
    def transmission(self) -> float:
        return abs(self.T) ** 2


@dataclass(frozen=True)
class ChannelSuperposition:
    """sum_i b_i |k_i> (x) |-k_i> in the centre-of-mass frame."""

    amplitudes: tuple
    momenta: tuple

    def __post_init__(self):
        b = np.asarray(self.amplitudes, dtype=complex)
        k = np.asarray(self.momenta, dtype=float)
        if b.shape != k.shape or b.ndim != 1 or b.size == 0:
            raise PreconditionError("amplitudes and momenta must be matching 1D lists")
        if abs(np.sum(np.abs(b) ** 2) - 1.0) > 1e-10:
            raise PreconditionError("channel amplitudes must be normalized")
        if np.any(k <= 0) or np.any(np.diff(k) <= 0):
            raise PreconditionError("channel momenta must be positive and strictly increasing")
        object.__setattr__(self, "amplitudes", tuple(b))
        object.__setattr__(self, "momenta", tuple(k))


@dataclass(frozen=True)
class ResonanceInfo:
    k_res: float
    gamma: float


def transfer_amplitudes(k, pot: DoubleDeltaPotential):
    """Vectorized (T, R) for incidence from the left."""
    k = np.asarray(k, dtype=float)
    beta = pot.strength / (2j * k)
    ka = 2.0 * k * pot.a
    # (1 - beta)^2 - beta^2 e^{2i ka}, arranged so large beta does not cancel
    m22 = 1.0 - 2.0 * beta - beta**2 * np.expm1(2j * ka)
    T = 1.0 / m22
    R = 2.0 * beta * (np.cos(ka) + 1j * beta * np.sin(ka)) / m22
    return T, R


def transmission_probability(k, pot: DoubleDeltaPotential):
    return np.abs(transfer_amplitudes(k, pot)[0]) ** 2


def scattering_amplitudes(k: float, pot: DoubleDeltaPotential) -> ScatteringAmplitudes:
    if not k > 0:
        raise DomainError("relative momentum must be positive")
    T, R = transfer_amplitudes(k, pot)
    return ScatteringAmplitudes(complex(T), complex(R), float(k))


def entropy_change_terms(channels: ChannelSuperposition, S: np.ndarray) -> tuple[float, float]:
    """(interference term, classical Boltzmann term) of the discrete-channel entropy change, in bits."""
    S = np.asarray(S, dtype=complex)
    b = np.asarray(channels.amplitudes)
    if S.ndim != 2 or S.shape[0] != S.shape[1] or S.shape[1] != b.size:
        raise PreconditionError("S must be square over the input channels")
    if not np.allclose(S.conj().T @ S, np.eye(b.size), atol=1e-8):
        raise PreconditionError("S is not unitary on the channel space")
    out = np.abs(S @ b) ** 2
    out = out[out > 0]
    pin = np.abs(b) ** 2
    pin = pin[pin > 0]
    return float(-np.sum(out * np.log2(out))), float(np.sum(pin * np.log2(pin)))


def delta_s1_discrete(channels: ChannelSuperposition, S: np.ndarray) -> float:
    """Single-particle entropy change (bits) for a discrete orthonormal final set."""
    quantum, classical = entropy_change_terms(channels, S)
    return quantum + classical


def _second_derivative(f, x: float, h: float) -> float:
    """Richardson-extrapolated central second difference."""

    def d2(step):
        return (f(x + step) - 2.0 * f(x) + f(x - step)) / step**2

    return (4.0 * d2(h / 2.0) - d2(h)) / 3.0


def find_resonances(pot: DoubleDeltaPotential, k_window: tuple[float, float], n_scan: int = 4000) -> list[ResonanceInfo]:
    """Transmission maxima |T|^2 = 1 inside ``k_window`` with their FWHM widths.

    The width is the full width at |T|^2 = 1/2. A lobe that never falls to
    1/2 gets the Lorentzian-equivalent width sqrt(-8 / T''(k_res)), which
    coincides with the half-maximum width for sharp resonances.
    """
    k_lo, k_hi = k_window
    if not 0 < k_lo < k_hi:
        raise DomainError("window must satisfy 0 < k_lo < k_hi")
    if pot.strength == 0:
        return []
    ks = np.linspace(k_lo, k_hi, n_scan)
    tr = transmission_probability(ks, pot)
    f = lambda k: float(transmission_probability(k, pot))
    out = []
    for i in range(1, n_scan - 1):
        if not (tr[i] >= tr[i - 1] and tr[i] > tr[i + 1]):
            continue
        res = minimize_scalar(lambda k: -f(k), bounds=(ks[i - 1], ks[i + 1]), method="bounded",
                              options={"xatol": 1e-12})
        k_res = float(res.x)
        if 1.0 - f(k_res) > 1e-8:
            continue
        # adjacent minima bound the lobe
        j = i
        while j > 0 and tr[j - 1] <= tr[j]:
            j -= 1
        m = i
        while m < n_scan - 1 and tr[m + 1] <= tr[m]:
            m += 1
        if j == 0 and tr[0] > 0.5 or m == n_scan - 1 and tr[-1] > 0.5:
            continue  # lobe truncated by the window
        if max(tr[j], tr[m]) < 0.5:
            k_left = brentq(lambda k: f(k) - 0.5, ks[j], k_res, xtol=1e-14)
            k_right = brentq(lambda k: f(k) - 0.5, k_res, ks[m], xtol=1e-14)
            gamma = k_right - k_left
        else:
            h = 1e-3 * (ks[m] - ks[j])
            gamma = math.sqrt(-8.0 / _second_derivative(f, k_res, h))
        out.append(ResonanceInfo(k_res, gamma))
    return out


def _curvature_step(k0: float, pot: DoubleDeltaPotential) -> float:
    spacing = math.pi / (2.0 * pot.a)
    lo = max(k0 - 2 * spacing, 1e-3 * k0)
    res = find_resonances(pot, (lo, k0 + 2 * spacing)) if pot.strength != 0 else []
    scale = min((r.gamma for r in res), default=spacing)
    scale = min(scale, spacing, k0)
    return 1e-2 * scale


def second_order_eigenvalues(
    k0: float, dk: float, pot: DoubleDeltaPotential, step: float | None = None
) -> tuple[float, float]:
    """(eps_T, eps_R) to second order in the momentum spread ``dk``.

    ``dk`` is the single-particle momentum width: the relative-momentum
    density has variance dk^2 / 2, so eps_T equals the packet-averaged
    transmission to second order.
    """
    if not k0 > 0:
        raise DomainError("k0 must be positive")
    f = lambda k: float(transmission_probability(k, pot))
    t0 = f(k0)
    if dk == 0:
        return t0, 1.0 - t0
    h = step if step is not None else _curvature_step(k0, pot)
    eps_t = t0 + 0.25 * dk**2 * _second_derivative(f, k0, h)
    eps_r = 1.0 - eps_t
    if not (0.0 <= eps_t <= 1.0):
        raise ValidityError(f"second-order eigenvalue {eps_t:.6g} outside [0, 1]; dk too large")
    return eps_t, eps_r


def binary_entropy(p: float) -> float:
    return float(sum(-q * math.log2(q) for q in (p, 1.0 - p) if q > 0))


def delta_s1_second(k0: float, dk: float, pot: DoubleDeltaPotential, step: float | None = None) -> float:
    eps_t, _ = second_order_eigenvalues(k0, dk, pot, step)
    return binary_entropy(eps_t)


# --- wavepacket collisions -------------------------------------------------

_PACKET_SIGMAS = 8.0


def _branch_weights(k0, sigma, pot, n, sign):
    """Squared singular values of one scattering branch on a (p1, p2) grid.

    sign=+1 is the transmitted branch (p1 near +k0), sign=-1 the reflected
    branch (p1 near -k0). Initial single-particle packets have momentum
    density std ``sigma`` centred at +-k0.
    """
    half = _PACKET_SIGMAS * sigma
    p1 = sign * k0 + np.linspace(-half, half, n)
    p2 = -sign * k0 + np.linspace(-half, half, n)
    dp = p1[1] - p1[0]
    P1, P2 = np.meshgrid(p1, p2, indexing="ij")
    total = P1 + P2
    rel = sign * 0.5 * (P1 - P2)  # incoming relative momentum feeding this branch
    # product of two Gaussians of density std sigma, written in (total, relative) momenta
    envelope = np.exp(-(total**2) / (8 * sigma**2) - (rel - k0) ** 2 / (2 * sigma**2))
    if pot.strength == 0:
        mod = np.ones_like(rel) if sign > 0 else np.zeros_like(rel)
    else:
        T, R = transfer_amplitudes(np.abs(rel), pot)
        mod = T if sign > 0 else R
    amp = envelope * mod * dp / (2 * math.pi * sigma**2) ** 0.5
    if not np.any(amp):
        return np.zeros(0)
    return np.linalg.svd(amp, compute_uv=False) ** 2


def _grid_points(sigma: float, resolution_scale: float, n_min: int, n_max: int) -> int:
    n = int(math.ceil(2 * _PACKET_SIGMAS * sigma / (resolution_scale / 6.0))) + 1
    n = max(n, n_min)
    if n > n_max:
        raise AccuracyError(f"{n} momentum points needed to resolve the transmission structure (limit {n_max})")
    return n


def wavepacket_delta_s1(
    k0: float, sigma: float, pot: DoubleDeltaPotential, *, n: int | None = None,
    resolution_scale: float | None = None, n_max: int = 1600,
) -> float:
    """Single-particle entropy change (bits) when two Gaussian packets collide.

    The post-collision momentum amplitude is the initial product packet
    times T(k) on the transmitted sector and R(k) on the reflected sector;
    the sectors occupy disjoint momentum regions (k0 >= 6 sigma) so the
    Schmidt spectrum is the union of the two branch spectra.
    """
    if not k0 > 0 or not sigma > 0:
        raise DomainError("k0 and sigma must be positive")
    if k0 < 6.0 * sigma:
        raise ValidityError("transmitted and reflected sectors overlap: need k0 >= 6 sigma")
    if n is None:
        scale = resolution_scale or min(sigma, math.pi / (2 * pot.a) / 4)
        n = _grid_points(sigma, scale, 65, n_max)
    weights = np.concatenate([_branch_weights(k0, sigma, pot, n, +1), _branch_weights(k0, sigma, pot, n, -1)])
    final = vn_entropy(spectrum_from_weights(weights), base=2)
    initial = vn_entropy(spectrum_from_weights(_branch_weights(k0, sigma, DoubleDeltaPotential(0.0, pot.a), n, +1)), base=2)
    return final - initial


@dataclass(frozen=True)
class EntropyScan:
    k: np.ndarray
    delta_s1: np.ndarray
    transmission: np.ndarray
    resonances: list
    log2_sigma_over_gamma: list


def wavepacket_entropy_scan(k_values, sigma: float, pot: DoubleDeltaPotential, **kwargs) -> EntropyScan:
    """Delta S_1(k0) over ``k_values`` plus the log2(sigma/Gamma) estimate per resonance."""
    k_values = np.asarray(k_values, dtype=float)
    res = find_resonances(pot, (float(k_values.min()), float(k_values.max())))
    scale = kwargs.pop("resolution_scale", None)
    if scale is None:
        scale = min([sigma, math.pi / (2 * pot.a) / 4] + [r.gamma for r in res])
    ds = np.array([wavepacket_delta_s1(k, sigma, pot, resolution_scale=scale, **kwargs) for k in k_values])
    return EntropyScan(
        k_values, ds, transmission_probability(k_values, pot), res,
        [math.log2(sigma / r.gamma) for r in res],
    )
