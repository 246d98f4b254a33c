import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from molqi.errors import DomainError, PreconditionError
from molqi.fluorescence import (
    DickeLabel,
    TransitionSpec,
    averaged_rate,
    cumulative_factor,
    dicke_from_symmetry,
    emission_curve,
    emitted_probability,
    instantaneous_rate,
    ringing_period,
)

COEFF = {0: 1.5, 1: 0.75}


def spec(parity="g", spin="singlet", dl=0, gamma=1.0, xi_dot=10.0):
    return TransitionSpec(parity, spin, dl, gamma, xi_dot)


# --- symmetry mapping -------------------------------------------------------------


@pytest.mark.parametrize(
    "parity, spin, label",
    [("u", "singlet", (1, 0)), ("g", "singlet", (0, 0)), ("g", "triplet", (1, 0)), ("u", "triplet", (0, 0))],
)
def test_dicke_mapping(parity, spin, label):
    assert dicke_from_symmetry(parity, spin) == DickeLabel(*label)


def test_dicke_labels():
    with pytest.raises(PreconditionError):
        DickeLabel(0, 1)
    with pytest.raises(PreconditionError):
        DickeLabel(1, 1).sign
    with pytest.raises(PreconditionError):
        dicke_from_symmetry("x", "singlet")
    assert DickeLabel(1, 0).sign == 1 and DickeLabel(0, 0).sign == -1


def test_transition_spec_validation():
    with pytest.raises(PreconditionError):
        spec(gamma=0.0)
    with pytest.raises(PreconditionError):
        spec(xi_dot=-1.0)
    with pytest.raises(PreconditionError):
        spec(dl=2)


# --- rates -----------------------------------------------------------------------


@pytest.mark.parametrize("dl", [0, 1])
def test_small_xi_limits(dl):
    for xi in (0.0, 1e-8, 1e-4):
        assert averaged_rate(xi, dl, +1) == pytest.approx(2.0, abs=1e-6)
        assert averaged_rate(xi, dl, -1) == pytest.approx(0.0, abs=1e-6)


@pytest.mark.parametrize("dl", [0, 1])
def test_large_xi_independent_atoms(dl):
    for sign in (1, -1):
        assert abs(averaged_rate(200.0, dl, sign) - 1.0) < 0.05


def test_rates_scale_with_gamma():
    assert averaged_rate(3.0, 0, 1, gamma=2.5) == pytest.approx(2.5 * averaged_rate(3.0, 0, 1), rel=1e-15)
    assert instantaneous_rate(3.0, 1, gamma=2.5) == pytest.approx(2.5 * instantaneous_rate(3.0, 1), rel=1e-15)


def test_branch_average_is_single_atom_rate():
    xi = np.linspace(0, 50, 101)
    for dl in (0, 1):
        mean = 0.5 * (averaged_rate(xi, dl, 1) + averaged_rate(xi, dl, -1))
        assert np.allclose(mean, 1.0, atol=1e-14)


def test_transition_types_differ_but_share_limits():
    assert averaged_rate(3.0, 0, 1) != pytest.approx(averaged_rate(3.0, 1, 1), abs=1e-3)
    assert averaged_rate(0.0, 0, 1) == averaged_rate(0.0, 1, 1)
    assert averaged_rate(1e5, 0, 1) == pytest.approx(averaged_rate(1e5, 1, 1), abs=1e-4)


def test_negative_xi_rejected():
    with pytest.raises(DomainError):
        averaged_rate(-0.1, 0, 1)
    with pytest.raises(DomainError):
        instantaneous_rate(np.array([1.0, np.nan]), 0)
    with pytest.raises(PreconditionError):
        averaged_rate(1.0, 0, 0)


@pytest.mark.parametrize("dl", [0, 1])
def test_instantaneous_bounds(dl):
    xi = np.linspace(0, 100, 200001)
    r = instantaneous_rate(xi, dl)
    assert r[0] == pytest.approx(1.0, abs=1e-15)
    assert np.all(np.abs(r) <= 1.0 + 1e-15)


@pytest.mark.parametrize("dl", [0, 1])
def test_rates_never_negative(dl):
    xi = np.linspace(0, 1000, 1000001)
    r = instantaneous_rate(xi, dl)
    assert np.all(1 + r >= 0) and np.all(1 - r >= 0)
    for sign in (1, -1):
        assert np.all(averaged_rate(xi, dl, sign) >= 0)


@pytest.mark.oracle
@pytest.mark.parametrize("dl", [0, 1])
@pytest.mark.parametrize("xi", [0.3, 1.0, math.pi, 7.5, 40.0])
def test_instantaneous_vs_numerical_derivative(dl, xi):
    h = 1e-3
    F = lambda x: COEFF[dl] * cumulative_factor(x, dl)
    num = (-F(xi + 2 * h) + 8 * F(xi + h) - 8 * F(xi - h) + F(xi - 2 * h)) / (12 * h)
    assert instantaneous_rate(xi, dl) == pytest.approx(num, rel=1e-6, abs=1e-12)


@pytest.mark.parametrize("dl", [0, 1])
def test_series_branch_is_continuous(dl):
    edge = 0.5
    for f in (
        lambda x: cumulative_factor(x, dl),
        lambda x: averaged_rate(x, dl, 1),
        lambda x: instantaneous_rate(x, dl),
    ):
        lo, hi = f(edge * (1 - 1e-12)), f(edge)
        assert lo == pytest.approx(hi, rel=1e-12, abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(xi=st.floats(0.0, 500.0), dl=st.sampled_from([0, 1]))
def test_averaged_rate_is_cumulative_over_xi(xi, dl):
    if xi < 1e-3:
        return
    expected = 1.0 + COEFF[dl] * cumulative_factor(xi, dl) / xi
    assert averaged_rate(xi, dl, 1) == pytest.approx(expected, rel=1e-12)


# --- emission curves --------------------------------------------------------------


def test_static_superradiant_pair():
    s = spec(parity="u", xi_dot=0.0, gamma=0.7)
    t = np.linspace(0, 30, 301)
    curve = emission_curve(s, t)
    assert curve.rate == pytest.approx(2 * np.exp(-2 * 0.7 * t), rel=1e-14)
    assert curve.cumulative[-1] == pytest.approx(1.0, abs=1e-9)
    assert emitted_probability(s, 30.0) == pytest.approx(curve.cumulative[-1], abs=1e-12)


def test_static_subradiant_pair_is_dark():
    curve = emission_curve(spec(xi_dot=0.0), np.linspace(0, 5, 11))
    assert np.all(curve.rate == 0) and np.all(curve.population == 1)


def test_subradiant_ringing():
    s = spec(gamma=1.0, xi_dot=10.0)  # gamma / xi_dot = 0.1
    t = np.linspace(0, 20, 200001)
    curve = emission_curve(s, t)
    assert curve.rate[0] == 0.0
    assert ringing_period(curve.xi, curve.ringing, 20.0) == pytest.approx(2 * math.pi, rel=0.05)
    # far from each other the fragments emit as independent atoms: rate -> gamma * rho
    tail = curve.xi > 150
    assert np.allclose(curve.rate[tail] / curve.population[tail], 1.0, atol=0.02)


@pytest.mark.parametrize("parity, dl", [("g", 0), ("u", 0), ("g", 1), ("u", 1)])
def test_emitted_probability_identity(parity, dl):
    s = spec(parity=parity, dl=dl, gamma=1.0, xi_dot=10.0)
    t = np.linspace(0, 20.0, 2001)
    curve = emission_curve(s, t)
    assert emitted_probability(s, 20.0) == pytest.approx(1 - curve.population[-1], abs=1e-8)
    assert np.all(curve.rate >= 0)
    assert np.all(np.diff(curve.cumulative) >= 0)
    assert curve.cumulative[-1] <= 1
    assert curve.anomalies == ()


def test_decay_switched_off():
    s = spec(xi_dot=10.0)
    curve = emission_curve(s, np.linspace(0, 5, 501), decay=False)
    assert curve.gamma == 0.0
    assert np.all(curve.population == 1)
    assert np.allclose(curve.rate, 1 - instantaneous_rate(curve.xi, 0), atol=1e-15)
    assert emitted_probability(s, 5.0, decay=False) == 0.0


def test_ringing_property_normalizes_population():
    curve = emission_curve(spec(parity="u", dl=1), np.linspace(0, 3, 301))
    assert np.allclose(curve.ringing, 1 + instantaneous_rate(curve.xi, 1), atol=1e-14)


def test_bad_time_grid():
    with pytest.raises(PreconditionError):
        emission_curve(spec(), np.array([0.1, 0.2]))
    with pytest.raises(PreconditionError):
        emission_curve(spec(), np.array([0.0, 0.2, 0.1]))


def test_ringing_period_needs_two_maxima():
    xi = np.linspace(0, 1, 50)
    with pytest.raises(PreconditionError):
        ringing_period(xi, xi**2, 0.0)
