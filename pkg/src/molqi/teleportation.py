"""Teleportation fidelity of a 1D wavepacket through a Gaussian smoothing channel.

Imperfect teleportation convolves the input Wigner function with an
isotropic Gaussian in the scaled plane X = x / lam, P = p * lam, where
lam^2 = dx_E / dp_E balances the two error sources. The kernel has
standard deviation sigma / sqrt(2) per scaled quadrature, with
sigma = exp(-2 s_E) and s_E = 1 / (2 dx_E dp_E) (hbar = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AccuracyError, PreconditionError
from .numerics import ComplexGrid1D

NORM_TOL = 1e-6
_KERNEL_SIGMAS = 10.0


@dataclass(frozen=True, eq=False)
class WignerGrid:
    x: np.ndarray
    p: np.ndarray
    values: np.ndarray  # shape (len(x), len(p))

    def __post_init__(self):
        x, p, w = np.asarray(self.x, float), np.asarray(self.p, float), np.asarray(self.values)
        if np.iscomplexobj(w):
            if np.max(np.abs(w.imag)) > 1e-10 * max(1.0, np.max(np.abs(w.real))):
                raise PreconditionError("Wigner values must be real")
            w = w.real
        if w.shape != (x.size, p.size):
            raise PreconditionError("values must have shape (len(x), len(p))")
        for axis in (x, p):
            d = np.diff(axis)
            if axis.size < 2 or not np.allclose(d, d[0], rtol=1e-9):
                raise PreconditionError("x and p grids must be uniform")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "values", w)
        if abs(self.total() - 1.0) > NORM_TOL:
            raise PreconditionError(f"Wigner function integrates to {self.total():.8f}, not 1")

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])

    @property
    def dp(self) -> float:
        return float(self.p[1] - self.p[0])

    def total(self) -> float:
        return float(self.values.sum() * self.dx * self.dp)

    def x_marginal(self) -> np.ndarray:
        return self.values.sum(axis=1) * self.dp

    def p_marginal(self) -> np.ndarray:
        return self.values.sum(axis=0) * self.dx


@dataclass(frozen=True)
class ErrorBudget:
    dx_E: float
    dp_E: float

    def __post_init__(self):
        if not (self.dx_E > 0 and self.dp_E > 0):
            raise PreconditionError("error widths must be positive")

    @classmethod
    def from_squeezing(cls, s_E: float, lam: float = 1.0) -> "ErrorBudget":
        if not (s_E > 0 and lam > 0):
            raise PreconditionError("s_E and lam must be positive")
        r = 1.0 / math.sqrt(2.0 * s_E)
        return cls(lam * r, r / lam)

    @property
    def s_E(self) -> float:
        return 1.0 / (2.0 * self.dx_E * self.dp_E)

    @property
    def sigma(self) -> float:
        return math.exp(-2.0 * self.s_E)

    @property
    def lam(self) -> float:
        return math.sqrt(self.dx_E / self.dp_E)


def wigner_of_pure_state(psi: ComplexGrid1D, alias_tol: float = 1e-10) -> WignerGrid:
    """W(x, p) = (1/pi) int psi*(x + y) psi(x - y) exp(2ipy) dy on the grid of psi.

    The p axis has spacing pi / (2 N dx) and covers |p| < pi / (2 dx);
    psi must carry no momentum beyond that band.
    """
    n = psi.n
    dx = psi.dx
    amp = np.fft.fft(psi.samples)
    k = 2.0 * np.pi * np.fft.fftfreq(n, d=dx)
    prob = np.abs(amp) ** 2
    outside = prob[np.abs(k) >= 0.5 * np.pi / dx].sum() / prob.sum()
    if outside > alias_tol:
        raise AccuracyError(f"momentum content {outside:.1e} beyond pi/(2 dx) would alias in W; refine dx")
    norm = psi.norm()
    if abs(norm - 1.0) > 1e-8:
        raise PreconditionError("psi must be normalized")
    f = psi.samples
    m = 2 * n
    j = np.arange(-(n - 1), n)
    i = np.arange(n)[:, None]
    plus, minus = i + j[None, :], i - j[None, :]
    ok = (plus >= 0) & (plus < n) & (minus >= 0) & (minus < n)
    corr = np.where(ok, np.conj(f[np.clip(plus, 0, n - 1)]) * f[np.clip(minus, 0, n - 1)], 0.0)
    # place shift j at FFT index j mod m, then sum_j c_j exp(2 i p_k j dx), p_k = pi k / (m dx)
    buf = np.zeros((n, m), dtype=complex)
    buf[:, j % m] = corr
    spec = np.fft.ifft(buf, axis=1) * m
    w = (dx / np.pi) * np.fft.fftshift(spec, axes=1).real
    p = np.pi * (np.arange(m) - m // 2) / (m * dx)
    return WignerGrid(psi.x, p, w)


def _kernel_variances(sigma: float, lam: float) -> tuple[float, float]:
    return 0.5 * (lam * sigma) ** 2, 0.5 * (sigma / lam) ** 2


def _convolve(values: np.ndarray, dx: float, dp: float, sigma: float, lam: float) -> np.ndarray:
    """Multiply by the kernel's characteristic function on a zero-padded grid."""
    vx, vp = _kernel_variances(sigma, lam)
    nx, n_p = values.shape
    # pad so the circular convolution does not wrap
    px = min(int(math.ceil(_KERNEL_SIGMAS * math.sqrt(vx) / dx)), 4 * nx)
    pp = min(int(math.ceil(_KERNEL_SIGMAS * math.sqrt(vp) / dp)), 4 * n_p)
    shape = (nx + 2 * px, n_p + 2 * pp)
    kx = 2 * np.pi * np.fft.fftfreq(shape[0], d=dx)
    kp = 2 * np.pi * np.fft.fftfreq(shape[1], d=dp)
    char = np.exp(-0.5 * (vx * kx[:, None] ** 2 + vp * kp[None, :] ** 2))
    padded = np.zeros(shape)
    padded[px : px + nx, pp : pp + n_p] = values
    return np.fft.ifft2(np.fft.fft2(padded) * char).real[px : px + nx, pp : pp + n_p]


def smooth(W: WignerGrid, sigma: float, lam: float = 1.0) -> WignerGrid:
    """Convolve W with the isotropic Gaussian of width ``sigma`` in the scaled plane."""
    if sigma < 0:
        raise PreconditionError("sigma must be non-negative")
    vx, vp = _kernel_variances(sigma, lam)
    if math.sqrt(vx) < W.dx / 10 and math.sqrt(vp) < W.dp / 10:
        return W  # narrower than a tenth of a cell: identity to grid accuracy
    out = _convolve(W.values, W.dx, W.dp, sigma, lam)
    kept = out.sum() * W.dx * W.dp
    if abs(kept - 1.0) > NORM_TOL:
        raise AccuracyError(
            f"smoothing kernel pushes {1 - kept:.1e} of the weight off the grid; enlarge the phase-space box"
        )
    return WignerGrid(W.x, W.p, out)


def teleport_smooth(W_in: WignerGrid, err: ErrorBudget) -> WignerGrid:
    return smooth(W_in, err.sigma, err.lam)


def fidelity(W_a: WignerGrid, W_b: WignerGrid) -> float:
    """2 pi int int W_a W_b dx dp, clamped to [0, 1 + 1e-6]."""
    if W_a.values.shape != W_b.values.shape or not (
        np.allclose(W_a.x, W_b.x) and np.allclose(W_a.p, W_b.p)
    ):
        raise PreconditionError("Wigner functions must share a grid")
    f = 2.0 * np.pi * float(np.sum(W_a.values * W_b.values)) * W_a.dx * W_a.dp
    return min(max(f, 0.0), 1.0 + 1e-6)


def fidelity_curve(psi: ComplexGrid1D, s_values, lam: float = 1.0) -> np.ndarray:
    """F(s_E) between the input state and its smoothed copy; s_E = 0 means sigma = 1."""
    w_in = wigner_of_pure_state(psi)
    out = []
    for s in np.asarray(s_values, dtype=float):
        if s < 0:
            raise PreconditionError("s_E must be non-negative")
        out.append(fidelity(w_in, smooth(w_in, math.exp(-2.0 * s), lam)))
    return np.array(out)


# --- state-space route -----------------------------------------------------


def noise_channel_fidelity(psi: ComplexGrid1D, sigma: float, lam: float = 1.0) -> float:
    """<psi| N(|psi><psi|) |psi> for the random-displacement channel with the kernel of :func:`smooth`.

    Uses F = int G(u, v) |<psi| D(u, v) |psi>|^2 du dv, where D shifts x by u
    and p by v; the characteristic function is built directly from psi.
    """
    if sigma == 0:
        return 1.0
    vx, vp = _kernel_variances(sigma, lam)
    n, dx = psi.n, psi.dx
    f = psi.samples
    # shifts u = m dx; for each shift the overlap integral over x is an FFT in v
    m_max = min(n - 1, int(math.ceil(_KERNEL_SIGMAS * math.sqrt(vx) / dx)))
    shifts = np.arange(-m_max, m_max + 1)
    n_fft = 4 * n
    v = 2 * np.pi * np.fft.fftfreq(n_fft, d=dx)
    gv = np.exp(-0.5 * v**2 / vp) / math.sqrt(2 * np.pi * vp)
    dv = 2 * np.pi / (n_fft * dx)
    total = 0.0
    for m in shifts:
        prod = np.zeros(n, dtype=complex)
        if m >= 0:
            prod[m:] = np.conj(f[m:]) * f[: n - m]
        else:
            prod[: n + m] = np.conj(f[: n + m]) * f[-m:]
        # chi(u, v) = int psi*(x) exp(iv(x - u/2)) psi(x - u) dx; the phase drops out of |chi|
        chi = np.fft.ifft(prod, n_fft) * n_fft * dx
        gu = math.exp(-0.5 * (m * dx) ** 2 / vx) / math.sqrt(2 * np.pi * vx)
        total += gu * float(np.sum(gv * np.abs(chi) ** 2)) * dv * dx
    return total


def cat_state(x: np.ndarray, d: float, width: float, parity: int = 1) -> ComplexGrid1D:
    """Normalized (g(x - d) + parity * g(x + d)) with Gaussian lobes of position std ``width``."""
    x = np.asarray(x, dtype=float)
    g = lambda c: np.exp(-((x - c) ** 2) / (4 * width**2))
    psi = ComplexGrid1D(g(d) + parity * g(-d), float(x[0]), float(x[1] - x[0]))
    return psi.normalized()


def cat_fringe_contrast(psi_cat: ComplexGrid1D, d: float, width: float, parity: int, sigma: float,
                        lam: float = 1.0) -> float:
    """Peak |interference term| over peak lobe density after smoothing by ``sigma``.

    For psi = N (g+ + parity g-) the lobe part of W is N^2 (W+ + W-); the
    rest is the interference term.
    """
    lobes = []
    for c in (d, -d):
        g = ComplexGrid1D(np.exp(-((psi_cat.x - c) ** 2) / (4 * width**2)), psi_cat.x0, psi_cat.dx).normalized()
        lobes.append(g)
    overlap = float(np.vdot(lobes[0].samples, lobes[1].samples).real * psi_cat.dx)
    n2 = 1.0 / (2.0 * (1.0 + parity * overlap))
    w_cat = wigner_of_pure_state(psi_cat)
    w_lobes = n2 * (wigner_of_pure_state(lobes[0]).values + wigner_of_pure_state(lobes[1]).values)
    interference = w_cat.values - w_lobes
    if sigma > 0:
        interference = _convolve(interference, w_cat.dx, w_cat.dp, sigma, lam)
        w_lobes = _convolve(w_lobes, w_cat.dx, w_cat.dp, sigma, lam)
    return float(np.max(np.abs(interference)) / np.max(w_lobes))
