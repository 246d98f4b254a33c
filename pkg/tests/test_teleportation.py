import math

import numpy as np
import pytest
from scipy.integrate import dblquad

from molqi.errors import AccuracyError, PreconditionError
from molqi.numerics import ComplexGrid1D
from molqi.teleportation import (
    ErrorBudget,
    WignerGrid,
    cat_fringe_contrast,
    cat_state,
    fidelity,
    fidelity_curve,
    noise_channel_fidelity,
    smooth,
    teleport_smooth,
    wigner_of_pure_state,
)

X = np.linspace(-12, 12, 256, endpoint=False)


def gaussian(center=0.0, width=0.7, k0=0.0, x=X):
    return ComplexGrid1D.from_function(
        lambda x: np.exp(-((x - center) ** 2) / (4 * width**2) + 1j * k0 * x), x
    ).normalized()


def oscillator(n, x=X):
    h = {0: lambda x: np.ones_like(x), 1: lambda x: x}[n]
    return ComplexGrid1D.from_function(lambda x: h(x) * np.exp(-(x**2) / 2), x).normalized()


# --- Wigner transform -------------------------------------------------------------


def test_gaussian_wigner_is_positive_gaussian():
    c, width, k0 = 0.5, 0.7, 1.2
    w = wigner_of_pure_state(gaussian(c, width, k0))
    assert w.values.min() > -1e-12
    x, p = w.x[:, None], w.p[None, :]
    exact = np.exp(-((x - c) ** 2) / (2 * width**2) - 2 * width**2 * (p - k0) ** 2) / math.pi
    assert np.max(np.abs(w.values - exact)) < 1e-8


def test_odd_cat_is_negative_at_origin():
    w = wigner_of_pure_state(cat_state(X, 3.0, 0.5, -1))
    i, j = np.argmin(np.abs(w.x)), np.argmin(np.abs(w.p))
    assert w.values[i, j] == pytest.approx(-1 / math.pi, rel=1e-6)


@pytest.mark.oracle
def test_marginals():
    psi = cat_state(X, 2.5, 0.6, 1)
    w = wigner_of_pure_state(psi)
    assert np.max(np.abs(w.x_marginal() - np.abs(psi.samples) ** 2)) < 1e-6
    # momentum density of the sampled state on the W momentum axis
    phi = np.array([np.sum(psi.samples * np.exp(-1j * p * psi.x)) * psi.dx for p in w.p]) / math.sqrt(2 * math.pi)
    assert np.max(np.abs(w.p_marginal() - np.abs(phi) ** 2)) < 1e-6


def test_aliasing_detected():
    with pytest.raises(AccuracyError):
        wigner_of_pure_state(gaussian(width=0.3, k0=12.0))


def test_grid_invariants():
    x = np.linspace(-1, 1, 5)
    with pytest.raises(PreconditionError):
        WignerGrid(x, x, np.ones((5, 5)))
    with pytest.raises(PreconditionError):
        WignerGrid(x, x, np.ones((5, 4)))
    with pytest.raises(PreconditionError):
        WignerGrid(np.array([0, 1, 3.0]), x, np.ones((3, 5)))


# --- smoothing ----------------------------------------------------------------------


def test_error_budget():
    err = ErrorBudget.from_squeezing(1.5, lam=2.0)
    assert err.s_E == pytest.approx(1.5, rel=1e-14)
    assert err.lam == pytest.approx(2.0, rel=1e-14)
    assert err.sigma == pytest.approx(math.exp(-3.0), rel=1e-14)
    with pytest.raises(PreconditionError):
        ErrorBudget(0.0, 1.0)


def test_ideal_teleportation_is_identity():
    w = wigner_of_pure_state(cat_state(X, 3.0, 0.5, -1))
    out = teleport_smooth(w, ErrorBudget.from_squeezing(12.0))
    assert np.max(np.abs(out.values - w.values)) < 1e-8


def test_smoothing_preserves_norm_and_improves_positivity():
    w = wigner_of_pure_state(cat_state(X, 3.0, 0.5, -1))
    for sigma in (0.05, 0.3, 1.0):
        out = smooth(w, sigma)
        assert out.total() == pytest.approx(1.0, abs=1e-6)
        assert out.values.min() >= w.values.min() - 1e-12


def test_gaussian_output_variance():
    width, sigma = 0.7, 0.8
    out = smooth(wigner_of_pure_state(gaussian(width=width)), sigma)
    mx, mp = out.x_marginal(), out.p_marginal()
    var_x = np.sum(out.x**2 * mx) * out.dx
    var_p = np.sum(out.p**2 * mp) * out.dp
    assert var_x == pytest.approx(width**2 + sigma**2 / 2, rel=1e-6)
    assert var_p == pytest.approx(1 / (4 * width**2) + sigma**2 / 2, rel=1e-6)


@pytest.mark.oracle
def test_smoothing_vs_direct_quadrature():
    width, sigma, lam = 0.7, 0.8, 1.3
    vx, vp = 0.5 * (lam * sigma) ** 2, 0.5 * (sigma / lam) ** 2
    w_in = lambda x, p: np.exp(-(x**2) / (2 * width**2) - 2 * width**2 * p**2) / math.pi
    kern = lambda u, v: np.exp(-(u**2) / (2 * vx) - v**2 / (2 * vp)) / (2 * math.pi * math.sqrt(vx * vp))
    out = smooth(wigner_of_pure_state(gaussian(width=width)), sigma, lam)
    for x0, p0 in ((0.0, 0.0), (0.75, -0.4), (-1.5, 0.9)):
        i, j = np.argmin(np.abs(out.x - x0)), np.argmin(np.abs(out.p - p0))
        xs, ps = out.x[i], out.p[j]
        ref, _ = dblquad(lambda v, u: w_in(xs - u, ps - v) * kern(u, v), -8, 8, -8, 8, epsabs=1e-12)
        assert out.values[i, j] == pytest.approx(ref, abs=1e-6)


def test_semigroup():
    w = wigner_of_pure_state(cat_state(X, 3.0, 0.5, 1))
    s1, s2 = 0.3, 0.45
    twice = smooth(smooth(w, s1), s2)
    once = smooth(w, math.hypot(s1, s2))
    assert np.max(np.abs(twice.values - once.values)) < 1e-6


def test_kernel_off_grid():
    with pytest.raises(AccuracyError):
        smooth(wigner_of_pure_state(gaussian()), 15.0)
    with pytest.raises(PreconditionError):
        smooth(wigner_of_pure_state(gaussian()), -1.0)


# --- fidelity -----------------------------------------------------------------------


def test_fidelity_of_identical_and_orthogonal_states():
    w0, w1 = wigner_of_pure_state(oscillator(0)), wigner_of_pure_state(oscillator(1))
    assert fidelity(w0, w0) == pytest.approx(1.0, abs=1e-6)
    assert fidelity(w0, w1) == pytest.approx(0.0, abs=1e-6)


@pytest.mark.parametrize("d", [0.5, 1.0, 2.0])
def test_offset_gaussian_fidelity(d):
    width = 0.7
    wa = wigner_of_pure_state(gaussian(0.0, width))
    wb = wigner_of_pure_state(gaussian(d, width))
    assert fidelity(wa, wb) == pytest.approx(math.exp(-(d**2) / (4 * width**2)), abs=1e-6)
    assert fidelity(wa, wb) == pytest.approx(fidelity(wb, wa), abs=1e-15)


def test_fidelity_displacement_invariance():
    a = wigner_of_pure_state(cat_state(X, 2.0, 0.6, 1))
    b = wigner_of_pure_state(gaussian(0.3, 0.8))
    shift = lambda psi, dx: ComplexGrid1D(np.interp(X - dx, X, psi.samples.real), X[0], X[1] - X[0]).normalized()
    a2 = wigner_of_pure_state(shift(cat_state(X, 2.0, 0.6, 1), 20 * (X[1] - X[0])))
    b2 = wigner_of_pure_state(shift(gaussian(0.3, 0.8), 20 * (X[1] - X[0])))
    assert fidelity(a, b) == pytest.approx(fidelity(a2, b2), abs=1e-6)


def test_fidelity_requires_shared_grid():
    a = wigner_of_pure_state(gaussian())
    b = wigner_of_pure_state(gaussian(x=np.linspace(-10, 10, 256, endpoint=False)))
    with pytest.raises(PreconditionError):
        fidelity(a, b)


def test_fidelity_curve_monotone_and_saturating():
    s = np.linspace(0, 4, 21)
    F = fidelity_curve(gaussian(width=0.7), s)
    assert np.all(np.diff(F) >= -1e-12)
    assert F[-1] == pytest.approx(1.0, abs=1e-6)
    with pytest.raises(PreconditionError):
        fidelity_curve(gaussian(), [-1.0])


@pytest.mark.oracle
@pytest.mark.parametrize("sigma", [0.2, 0.6, 1.5])
def test_wigner_route_matches_noise_channel(sigma):
    psi = cat_state(X, 3.0, 0.5, -1)
    w = wigner_of_pure_state(psi)
    assert fidelity(w, smooth(w, sigma)) == pytest.approx(noise_channel_fidelity(psi, sigma), abs=1e-6)


def test_cat_fringes_destroyed_by_wide_kernel():
    psi = cat_state(X, 3.0, 0.5, -1)
    assert cat_fringe_contrast(psi, 3.0, 0.5, -1, 0.0) > 0.9
    assert cat_fringe_contrast(psi, 3.0, 0.5, -1, 3.0) < 1e-3
