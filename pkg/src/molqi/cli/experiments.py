"""Experiment registry: parameter schemas and the curves each experiment produces."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .. import cavity, collision, dissociation, fluorescence, gaussian_epr, superbeats, teleportation
from ..errors import ConfigError
from ..numerics import ComplexGrid1D


@dataclass(frozen=True)
class Param:
    kind: type
    default: object
    choices: tuple = ()
    low: float | None = None  # inclusive lower bound
    positive: bool = False


@dataclass
class Curve:
    name: str
    columns: list
    rows: np.ndarray  # shape (n_rows, n_columns)

    def __post_init__(self):
        self.rows = np.atleast_2d(np.asarray(self.rows, dtype=float))
        if self.rows.shape[1] != len(self.columns):
            raise ValueError(f"curve {self.name}: {self.rows.shape[1]} columns for {len(self.columns)} names")


@dataclass(frozen=True)
class Experiment:
    name: str
    figure: str
    conventions: str
    schema: dict
    runner: Callable[[dict], list]
    check: Callable[[dict], None] | None = None

    def coerce(self, key: str, raw, section: str):
        if key not in self.schema:
            raise ConfigError(f"{section}.{key}: unknown key for experiment {self.name}")
        p = self.schema[key]
        if not isinstance(raw, str):
            return raw
        try:
            if p.kind is bool:
                low = raw.strip().lower()
                if low not in ("true", "false", "yes", "no", "1", "0"):
                    raise ValueError
                return low in ("true", "yes", "1")
            return p.kind(raw.strip())
        except ValueError:
            raise ConfigError(f"{section}.{key}: expected {p.kind.__name__}, got {raw!r}") from None

    def validate(self, values: dict) -> dict:
        out = {k: p.default for k, p in self.schema.items()}
        for k, v in values.items():
            if k not in self.schema:
                raise ConfigError(f"{self.name}.{k}: unknown key for experiment {self.name}")
            out[k] = v
        for k, p in self.schema.items():
            v = out[k]
            if p.choices and v not in p.choices:
                raise ConfigError(f"{self.name}.{k}: {v!r} not in {list(p.choices)}")
            if p.kind in (int, float):
                if not math.isfinite(v):
                    raise ConfigError(f"{self.name}.{k}: must be finite")
                if p.positive and not v > 0:
                    raise ConfigError(f"{self.name}.{k}: must be positive")
                if p.low is not None and v < p.low:
                    raise ConfigError(f"{self.name}.{k}: must be >= {p.low}")
        if self.check:
            self.check(out)
        return out


def _need(cond: bool, field: str, msg: str):
    if not cond:
        raise ConfigError(f"{field}: {msg}")


# --- runners ----------------------------------------------------------------


def _epr(p):
    state = gaussian_epr.TwoParticleGaussian(p["dx_cm"], p["dx_rel"], p["mass"])
    rows = []
    for t in np.linspace(0.0, p["t_max"], p["n_t"]):
        st = gaussian_epr.free_evolve(state, t)
        m = gaussian_epr.epr_measures(st)
        rows.append((t, m.s, m.K, m.S, math.log(m.s)))
    return [Curve("epr_measures", ["t", "s", "K", "S", "log_s"], rows)]


def _collision(p):
    pot = collision.DoubleDeltaPotential(p["strength"], p["a"])
    k = np.linspace(p["k_min"], p["k_max"], p["n_k"])
    scan = collision.wavepacket_entropy_scan(k, p["sigma"], pot)
    curves = [Curve("entropy_scan", ["k0", "transmission", "delta_s1"], np.column_stack([k, scan.transmission, scan.delta_s1]))]
    if scan.resonances:
        curves.append(Curve(
            "resonances", ["k_res", "gamma", "log2_sigma_over_gamma"],
            [(r.k_res, r.gamma, e) for r, e in zip(scan.resonances, scan.log2_sigma_over_gamma)],
        ))
    return curves


def _raman(p):
    rp = dissociation.RamanParams(p["omega_eff"], p["v"], p["k"])
    r, dens = dissociation.radial_profile(rp, p["t"], p["n_r"])
    t0 = 2 * math.pi / p["omega_eff"]
    ts = np.linspace(t0, max(p["t"], t0), p["n_t"])
    spread = [dissociation.momentum_spread(rp, t, n_q=4001) for t in ts]
    return [
        Curve("radial_profile", ["r", "r2_density"], np.column_stack([r, dens])),
        Curve("momentum_spread", ["t", "dq"], np.column_stack([ts, spread])),
    ]


def _trap(p):
    state = gaussian_epr.TwoParticleGaussian(p["dx_cm"], p["dx_rel"], p["mass"])
    trap = dissociation.TrapParams.for_mass(p["mass"], p["omega"], p["x0"], p["v_recede"])
    rows = []
    for t in np.linspace(0.0, p["t_max"], p["n_t"]):
        st = dissociation.harmonic_confinement_evolve(state, trap, t)
        x1, x2 = dissociation.receding_well_frame(trap, t)
        rows.append((t, gaussian_epr.squeezing_parameter(st), st.sigma_cm, st.sigma_rel, x1, x2))
    return [Curve("trap_squeeze", ["t", "s", "sigma_cm", "sigma_rel", "well_x1", "well_x2"], rows)]


def _fluorescence(p):
    ratio = p["gamma_over_xidot"]
    decay = ratio > 0
    spec = fluorescence.TransitionSpec(p["parity"], p["spin"], p["delta_lambda"], ratio if decay else 1.0, 1.0)
    t = np.linspace(0.0, p["xi_max"], p["n"])
    c = fluorescence.emission_curve(spec, t, decay=decay)
    return [Curve("emission", ["xi", "rate", "emitted", "population"], np.column_stack([c.xi, c.rate, c.cumulative, c.population]))]


def _superbeats(p):
    sp = superbeats.SuperbeatParams(
        p["A"], p["phi"], 0.0, p["G_plus"], p["G_minus"], p["G_c"], p["gamma"], p["eps"], p["rho_pp"], p["rho_mm"]
    )
    t = np.linspace(0.0, p["t_max"], p["n"])
    c = superbeats.emission_rate_superbeats(t, sp)
    om, amp = superbeats.beat_spectrum(c)
    return [
        Curve("rate", ["t", "rate", "emitted"], np.column_stack([t, c.rate, c.cumulative])),
        Curve("spectrum", ["omega", "amplitude"], np.column_stack([om, amp])),
    ]


def _teleport(p):
    x = np.linspace(-p["x_max"], p["x_max"], p["n_x"])
    if p["state"] == "cat":
        psi = teleportation.cat_state(x, p["d"], p["width"], p["parity"])
    else:
        psi = ComplexGrid1D(np.exp(-((x - p["d"]) ** 2) / (4 * p["width"] ** 2)), float(x[0]), float(x[1] - x[0])).normalized()
    err = teleportation.ErrorBudget.from_squeezing(p["s_E"], p["lam"]) if p["s_E"] > 0 else None
    sigma = err.sigma if err else 1.0
    fid = teleportation.fidelity_curve(psi, [p["s_E"]], p["lam"])[0]
    cols, row = ["s_E", "sigma", "fidelity"], [p["s_E"], sigma, fid]
    if p["state"] == "cat":
        cols.append("fringe_contrast")
        row.append(teleportation.cat_fringe_contrast(psi, p["d"], p["width"], p["parity"], sigma, p["lam"]))
    return [Curve("fidelity", cols, [row])]


def _cavity(p):
    state = cavity.DimerDensity4.named(p["state"])
    cp = cavity.CavityParams(p["g_eff"], p["eta"], p["n_bar"])
    gt = np.linspace(0.0, p["gamma_t_max"], p["n"])
    c = cavity.temperature_curve(state, gt, cp, p["convention"], p["thermal_decay"])
    return [Curve("temperature", ["gamma_t", "Tc_over_T"], np.column_stack([gt, c.Tc_over_T]))]


# --- cross-field checks -----------------------------------------------------


def _check_epr(p):
    _need(p["n_t"] >= 1, "epr-measures.n_t", "must be >= 1")


def _check_collision(p):
    _need(p["k_max"] > p["k_min"], "collision-scan.k_max", "must exceed k_min")
    _need(p["k_min"] >= 6 * p["sigma"], "collision-scan.k_min", "must be >= 6 sigma so the sectors separate")


def _check_raman(p):
    _need(p["t"] * p["omega_eff"] >= 2 * math.pi, "raman-profile.t", "need t * omega_eff >= 2 pi")


def _check_superbeats(p):
    _need(p["rho_pp"] + p["rho_mm"] <= 1, "superbeats.rho_mm", "rho_pp + rho_mm must not exceed 1")
    _need(p["A"] <= 2 * math.sqrt(p["rho_pp"] * p["rho_mm"]), "superbeats.A", "exceeds 2 sqrt(rho_pp rho_mm)")


def _check_teleport(p):
    _need(p["parity"] in (1, -1), "teleport.parity", "must be 1 or -1")


_CONV = "hbar = 1; "
EXPERIMENTS: dict[str, Experiment] = {
    e.name: e
    for e in [
        Experiment(
            "epr-measures", "EPR measures under free evolution",
            _CONV + "mass m per particle, widths in position units, entropy in nats",
            {
                "dx_cm": Param(float, 2.0, positive=True),
                "dx_rel": Param(float, 0.1, positive=True),
                "mass": Param(float, 1.0, positive=True),
                "t_max": Param(float, 1.0, low=0.0),
                "n_t": Param(int, 11),
            },
            _epr, _check_epr,
        ),
        Experiment(
            "collision-scan", "collision entropy scan",
            _CONV + "relative motion psi'' + k^2 psi = g[delta(x-a)+delta(x+a)] psi; entropy in bits",
            {
                "strength": Param(float, 5.0),
                "a": Param(float, 1.0, positive=True),
                "sigma": Param(float, 0.02, positive=True),
                "k_min": Param(float, 1.0, positive=True),
                "k_max": Param(float, 1.6, positive=True),
                "n_k": Param(int, 41, low=2),
            },
            _collision, _check_collision,
        ),
        Experiment(
            "raman-profile", "Raman dissociation wavepacket",
            _CONV + "reduced mass k / v, energy k v / 2",
            {
                "omega_eff": Param(float, 2.0, positive=True),
                "v": Param(float, 1.0, positive=True),
                "k": Param(float, 20.0, positive=True),
                "t": Param(float, 10.0, positive=True),
                "n_r": Param(int, 2001, low=2),
                "n_t": Param(int, 9, low=1),
            },
            _raman, _check_raman,
        ),
        Experiment(
            "trap-squeeze", "EPR breathing in a double-parabolic trap",
            _CONV + "trap frequency omega, time in the same units",
            {
                "dx_cm": Param(float, 0.3, positive=True),
                "dx_rel": Param(float, 0.05, positive=True),
                "mass": Param(float, 1.0, positive=True),
                "omega": Param(float, 2.0, positive=True),
                "x0": Param(float, 0.0),
                "v_recede": Param(float, 0.0),
                "t_max": Param(float, 3.2, low=0.0),
                "n_t": Param(int, 161, low=1),
            },
            _trap,
        ),
        Experiment(
            "fluorescence", "cooperative fluorescence of receding fragments",
            _CONV + "rate in units of gamma against xi = xi_dot t",
            {
                "parity": Param(str, "u", ("u", "g")),
                "spin": Param(str, "singlet", ("singlet", "triplet")),
                "delta_lambda": Param(int, 0, (0, 1)),
                "gamma_over_xidot": Param(float, 0.1, low=0.0),
                "xi_max": Param(float, 40.0, positive=True),
                "n": Param(int, 2001, low=2),
            },
            _fluorescence,
        ),
        Experiment(
            "superbeats", "fine-structure superbeats",
            _CONV + "rate in units of gamma, time after the coupling region",
            {
                "A": Param(float, 0.5, low=0.0),
                "phi": Param(float, 0.0),
                "eps": Param(float, 20.0, low=0.0),
                "gamma": Param(float, 1.0, positive=True),
                "G_plus": Param(float, 0.3),
                "G_minus": Param(float, -0.3),
                "G_c": Param(float, 0.5),
                "rho_pp": Param(float, 0.5, low=0.0),
                "rho_mm": Param(float, 0.5, low=0.0),
                "t_max": Param(float, 8.0, positive=True),
                "n": Param(int, 4096, low=2),
            },
            _superbeats, _check_superbeats,
        ),
        Experiment(
            "teleport", "teleportation fidelity",
            _CONV + "sigma = exp(-2 s_E); s_E = 0 means sigma = 1",
            {
                "state": Param(str, "gaussian", ("gaussian", "cat")),
                "s_E": Param(float, 1.0, low=0.0),
                "lam": Param(float, 1.0, positive=True),
                "d": Param(float, 0.0),
                "width": Param(float, 0.7071067811865476, positive=True),
                "parity": Param(int, 1),
                "x_max": Param(float, 8.0, positive=True),
                "n_x": Param(int, 256, low=16),
            },
            _teleport, _check_teleport,
        ),
        Experiment(
            "cavity", "cavity temperature against transit time",
            _CONV + "T_c / T with T fixed by n_bar; gamma t is the decay exposure before pumping",
            {
                "state": Param(str, "psi_plus", ("psi_plus", "psi_minus", "ee", "gg", "rho_mix")),
                "n_bar": Param(float, 0.05, low=0.0),
                "g_eff": Param(float, 10.0, low=0.0),
                "eta": Param(float, 1.0, positive=True),
                "gamma_t_max": Param(float, 8.0, low=0.0),
                "n": Param(int, 81, low=1),
                "convention": Param(str, "balanced", ("balanced", "verbatim")),
                "thermal_decay": Param(bool, True),
            },
            _cavity,
        ),
    ]
}
