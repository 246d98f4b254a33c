"""INI experiment configs.

Layout::

    [run]
    experiment = cavity
    output = out/cavity        ; optional

    [cavity]                   ; parameters, section named after the experiment
    n_bar = 0.05

    [sweep]                    ; optional: comma lists or linspace(a, b, n)
    n_bar = 0.02, 0.05
"""

from __future__ import annotations

import configparser
import itertools
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import ConfigError
from .experiments import EXPERIMENTS, Experiment

_LINSPACE = re.compile(r"^linspace\(\s*([^,]+),\s*([^,]+),\s*(\d+)\s*\)$")


@dataclass
class ExperimentConfig:
    experiment: str
    params: dict
    output: str | None = None
    sweep: dict = field(default_factory=dict)
    source: str = ""

    @property
    def spec(self) -> Experiment:
        return EXPERIMENTS[self.experiment]

    def points(self) -> list[dict]:
        """Cartesian product of the sweep axes, each merged over the base parameters."""
        if not self.sweep:
            return [dict(self.params)]
        keys = list(self.sweep)
        out = []
        for combo in itertools.product(*(self.sweep[k] for k in keys)):
            p = dict(self.params)
            p.update(zip(keys, combo))
            out.append(self.spec.validate(p))
        return out


def _parser() -> configparser.ConfigParser:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";", "#"))
    cp.optionxform = str  # keep key case
    return cp


def _axis(name: str, raw: str, exp: Experiment) -> list:
    m = _LINSPACE.match(raw.strip())
    if m:
        try:
            a, b = float(m.group(1)), float(m.group(2))
        except ValueError:
            raise ConfigError(f"sweep.{name}: bad linspace bounds in {raw!r}") from None
        n = int(m.group(3))
        if n < 1:
            raise ConfigError(f"sweep.{name}: linspace needs at least one point")
        values = [float(v) for v in np.linspace(a, b, n)]
    else:
        values = [v.strip() for v in raw.split(",") if v.strip()]
    if not values:
        raise ConfigError(f"sweep.{name}: empty axis")
    return [exp.coerce(name, v, section="sweep") for v in values]


def parse_config(text: str) -> ExperimentConfig:
    cp = _parser()
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"unreadable config: {exc}") from None
    if not cp.has_section("run"):
        raise ConfigError("missing [run] section")
    run = dict(cp["run"])
    unknown = set(run) - {"experiment", "output"}
    if unknown:
        raise ConfigError(f"run.{sorted(unknown)[0]}: unknown key")
    name = run.get("experiment")
    if name is None:
        raise ConfigError("run.experiment: required")
    if name not in EXPERIMENTS:
        raise ConfigError(f"run.experiment: unknown experiment {name!r} (choose from {', '.join(EXPERIMENTS)})")
    exp = EXPERIMENTS[name]
    extra = set(cp.sections()) - {"run", name, "sweep"}
    if extra:
        raise ConfigError(f"[{sorted(extra)[0]}]: unexpected section for experiment {name}")
    raw = dict(cp[name]) if cp.has_section(name) else {}
    params = exp.validate({k: exp.coerce(k, v, section=name) for k, v in raw.items()})
    sweep = {}
    if cp.has_section("sweep"):
        for k, v in cp["sweep"].items():
            sweep[k] = _axis(k, v, exp)
    cfg = ExperimentConfig(name, params, run.get("output"), sweep, text)
    cfg.points()  # validate every sweep point up front
    return cfg


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    text = path.read_text()
    if path.name.endswith(".meta.json"):
        try:
            text = json.loads(text)["rerun_config"]
        except (ValueError, KeyError):
            raise ConfigError(f"{path}: not a metadata sidecar with an embedded config") from None
    return parse_config(text)


def render_config(experiment: str, params: dict) -> str:
    """Single-point config reproducing ``params`` exactly (floats via repr)."""
    lines = ["[run]", f"experiment = {experiment}", "", f"[{experiment}]"]
    lines += [f"{k} = {v!r}" if isinstance(v, float) else f"{k} = {v}" for k, v in params.items()]
    return "\n".join(lines) + "\n"
