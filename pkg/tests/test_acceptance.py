"""Acceptance criteria, one test each.

Run alone with ``pytest -m acceptance``; a PASS/FAIL line per criterion is
printed in the terminal summary.
"""

import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest
from scipy.signal import argrelextrema

from molqi import cavity, collision, fluorescence, superbeats, teleportation
from molqi.cli import bundled_configs
from molqi.cli.config import load_config
from molqi.cli.main import EXIT_OK, main
from molqi.errors import DivergenceError
from molqi.gaussian_epr import TwoParticleGaussian, epr_measures

pytestmark = pytest.mark.acceptance

TESTS = Path(__file__).parent


def test_epr_measures(criterion):
    criterion(1, "EPR measures: separable limit and log s estimate")
    rng = np.random.default_rng(2024)
    for _ in range(50):
        st = TwoParticleGaussian.separable(rng.uniform(0.05, 5.0), rng.uniform(0.1, 10.0))
        m = epr_measures(st)
        assert m.s == pytest.approx(1.0, abs=1e-8)
        assert m.K == pytest.approx(1.0, abs=1e-8)
        assert m.S == pytest.approx(0.0, abs=1e-8)
    m = epr_measures(TwoParticleGaussian(2.0, 0.1))
    assert abs(m.S - math.log(m.s)) / m.S <= 0.1


def test_collision_resonances(criterion):
    criterion(2, "collision resonances: dip/peak shapes and log2(sigma/Gamma) scale")
    pot = collision.DoubleDeltaPotential(20.0, 1.0)
    res = collision.find_resonances(pot, (1.0, 5.0))
    assert len(res) >= 2
    for r in res:
        # narrow packet: a dip at the resonance flanked by two peaks
        ks = r.k_res + r.gamma * np.linspace(-3, 3, 41)
        ds = np.array([collision.wavepacket_delta_s1(k, r.gamma / 10, pot, resolution_scale=r.gamma) for k in ks])
        mins, maxs = argrelextrema(ds, np.less)[0], argrelextrema(ds, np.greater)[0]
        assert len(mins) == 1 and abs(ks[mins[0]] - r.k_res) <= ks[1] - ks[0]
        assert np.any(maxs < mins[0]) and np.any(maxs > mins[0])
        # broad packet: one peak on the resonance
        sigma = 2 * r.gamma
        ks = r.k_res + sigma * np.linspace(-4, 4, 17)
        ds = np.array([collision.wavepacket_delta_s1(k, sigma, pot, resolution_scale=r.gamma) for k in ks])
        assert len(argrelextrema(ds, np.greater)[0]) == 1
        assert abs(ks[np.argmax(ds)] - r.k_res) <= ks[1] - ks[0]
    r = res[0]
    sigma = 8 * r.gamma
    ks = r.k_res + sigma * np.linspace(-1, 1, 9)
    peak = max(collision.wavepacket_delta_s1(k, sigma, pot, resolution_scale=r.gamma) for k in ks)
    estimate = math.log2(sigma / r.gamma)
    print(f"max delta S1 = {peak:.4f} bits, log2(sigma/Gamma) = {estimate:.4f}")
    assert estimate / 2 <= peak <= 2 * estimate


def test_second_order_convergence(criterion):
    criterion(3, "second-order entropy converges with order >= 2 in sigma")
    pot = collision.DoubleDeltaPotential(5.0, 1.0)
    sigmas = np.array([0.04, 0.02, 0.01, 0.005])
    for k0 in (2.0, 2.2, 3.5):
        err = np.array([
            abs(collision.wavepacket_delta_s1(k0, s, pot) - collision.delta_s1_second(k0, s, pot)) for s in sigmas
        ])
        order = np.polyfit(np.log(sigmas), np.log(err), 1)[0]
        print(f"k0 = {k0}: empirical order {order:.3f}")
        assert order >= 1.9


def test_fluorescence_limits(criterion):
    criterion(4, "fluorescence: superradiant and subradiant limits")
    for dl in (0, 1):
        for xi in (0.0, 1e-8, 1e-5):
            assert fluorescence.averaged_rate(xi, dl, +1) == pytest.approx(2.0, abs=1e-6)
            assert fluorescence.averaged_rate(xi, dl, -1) == pytest.approx(0.0, abs=1e-6)
        for sign in (1, -1):
            assert fluorescence.averaged_rate(200.0, dl, sign) == pytest.approx(1.0, rel=0.05)


def test_fluorescence_self_consistency(criterion):
    criterion(5, "fluorescence: emitted probability and ringing period")
    t = np.linspace(0.0, 20.0, 2001)
    for parity in ("u", "g"):
        for spin in ("singlet", "triplet"):
            for dl in (0, 1):
                spec = fluorescence.TransitionSpec(parity, spin, dl, 1.0, 10.0)
                curve = fluorescence.emission_curve(spec, t)
                assert fluorescence.emitted_probability(spec, 20.0) == pytest.approx(
                    1.0 - curve.population[-1], abs=1e-8
                )
    spec = fluorescence.TransitionSpec("g", "singlet", 0, 1.0, 10.0)
    curve = fluorescence.emission_curve(spec, np.linspace(0.0, 20.0, 200001))
    period = fluorescence.ringing_period(curve.xi, curve.ringing, 20.0)
    assert period == pytest.approx(2 * math.pi, rel=0.05)


def test_superbeats(criterion):
    criterion(6, "superbeats: beat frequency, initial rate, eigenvector limits")
    t = np.linspace(0.0, 40.0, 2**16)
    for ratio in (20, 100):
        p = superbeats.SuperbeatParams(0.8, 0.3, 0.0, 0.4, -0.3, 0.6, 1.0, float(ratio), 0.5, 0.5)
        omega, bin_width = superbeats.dominant_beat(superbeats.emission_rate_superbeats(t, p), p.eps / 2)
        assert abs(omega - p.eps) <= bin_width
    for w in (1, -1):
        for A, phi in ((1.0, 0.7), (0.4, 2.0), (0.0, 0.0)):
            p = superbeats.SuperbeatParams(A, phi, 0.0, w * 1.0, -w * 1.0, w * 1.0, 1.0, 20.0, 0.5, 0.5)
            rate = superbeats.emission_rate_superbeats(np.linspace(0, 1, 11), p).rate[0]
            assert rate == pytest.approx(superbeats.initial_rate(w, A, phi), abs=1e-10)
    for parity in ("u", "g"):
        lim = superbeats.eigenpair_limits(superbeats.AdiabaticModel(2.0, 0.5, parity))
        assert min(lim.overlaps.values()) >= 0.999


def test_teleportation(criterion):
    criterion(7, "teleportation: ideal limit, semigroup, cat fringe loss")
    x = np.linspace(-12, 12, 256, endpoint=False)
    cat = teleportation.cat_state(x, 3.0, 0.5, -1)
    assert teleportation.fidelity_curve(cat, [12.0])[0] == pytest.approx(1.0, abs=1e-6)
    w = teleportation.wigner_of_pure_state(cat)
    twice = teleportation.smooth(teleportation.smooth(w, 0.3), 0.45)
    once = teleportation.smooth(w, math.hypot(0.3, 0.45))
    assert np.max(np.abs(twice.values - once.values)) < 1e-6
    assert teleportation.cat_fringe_contrast(cat, 3.0, 0.5, -1, 3.0) < 1e-3


def test_cavity_thermodynamics(criterion):
    criterion(8, "cavity: boundary, ordering, heating lattice, transit curves")
    P = cavity.CavityParams(10.0, 1.0, 0.05)
    assert cavity.steady_state(0.0, -1.0, P).Tc_over_T == pytest.approx(1.0, abs=1e-8)
    for n_bar in (0.05, 0.5, 2.0):
        p = cavity.CavityParams(1.0, 1.0, n_bar)
        for w in np.linspace(-1.9, -0.1, 7):
            C = -1 - (n_bar + 0.5) * w
            if abs(C) <= cavity.coherence_bound(w):
                assert cavity.steady_state(w, C, p).Tc_over_T == pytest.approx(1.0, abs=1e-8)
    for n_bar in (0.01, 0.05, 0.5, 2.0):
        for g in (0.1, 1.0, 10.0):
            p = cavity.CavityParams(g, 1.0, n_bar)
            t_plus, t_mix, t_minus = (cavity.steady_state(0.0, C, p).Tc_over_T for C in (1.0, 0.0, -1.0))
            assert t_plus > t_mix > t_minus
    count = mismatches = 0
    for n_bar in np.linspace(0.01, 3.0, 10):
        p = cavity.CavityParams(1.0, 1.0, n_bar)
        for w in np.linspace(-2, 2, 41):
            b = cavity.coherence_bound(w)
            for C in np.linspace(-b, b, 31):
                try:
                    ratio = cavity.steady_state(w, C, p).Tc_over_T
                except DivergenceError:
                    continue
                count += 1
                mismatches += cavity.heating_condition(w, C, n_bar) != (ratio > 1)
    assert count >= 10_000 and mismatches == 0
    gt = np.concatenate([[0.0, 0.01, 0.05, 0.1], np.linspace(0.5, 12.0, 24)])
    plus = cavity.temperature_curve(cavity.DimerDensity4.named("psi_plus"), gt, P, thermal_decay=True).Tc_over_T
    mix = cavity.temperature_curve(cavity.DimerDensity4.named("rho_mix"), gt, P, thermal_decay=True).Tc_over_T
    assert np.all(plus[:4] > mix[:4])
    assert plus[-1] == pytest.approx(1.0, abs=1e-4) and mix[-1] == pytest.approx(1.0, abs=1e-4)


def test_oracle_tier(criterion):
    criterion(9, "oracle tier agrees with every closed form")
    res = subprocess.run(
        [sys.executable, "-m", "pytest", "-m", "oracle", "-q", "-p", "no:cacheprovider", str(TESTS)],
        capture_output=True, text=True, cwd=TESTS.parent,
    )
    tail = res.stdout.strip().splitlines()[-1] if res.stdout.strip() else res.stderr
    print(tail)
    assert res.returncode == 0, res.stdout[-3000:]
    assert " passed" in tail and "failed" not in tail


def test_cli_determinism(criterion, tmp_path):
    criterion(10, "CLI: byte-identical CSV on repeated runs")
    configs = bundled_configs()
    assert configs
    for cfg in configs:
        path = Path(str(cfg))
        cmd = "sweep" if load_config(path).sweep else "run"
        runs = []
        for i in range(2):
            out = tmp_path / f"{path.stem}_{i}"
            assert main([cmd, str(path), "--out", str(out), "--no-gnuplot"]) == EXIT_OK
            runs.append({str(f.relative_to(out)): f.read_bytes() for f in sorted(out.rglob("*.csv"))})
        assert runs[0] and runs[0] == runs[1], path.name
