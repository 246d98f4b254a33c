"""CSV, metadata sidecar and gnuplot writers."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .. import __version__
from .experiments import Curve


def format_number(v: float) -> str:
    if np.isnan(v):
        return "nan"
    if np.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.17g}"


def write_csv(curve: Curve, path: Path) -> None:
    lines = [",".join(curve.columns)]
    lines += [",".join(format_number(float(v)) for v in row) for row in curve.rows]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_meta(curve: Curve, path: Path, experiment, params: dict, config_text: str, rerun: str) -> None:
    meta = {
        "experiment": experiment.name,
        "figure": experiment.figure,
        "curve": curve.name,
        "columns": curve.columns,
        "rows": int(curve.rows.shape[0]),
        "parameters": params,
        "units": experiment.conventions,
        "version": __version__,
        "config": config_text,
        "rerun_config": rerun,
    }
    with open(path, "w", newline="\n") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_gnuplot(curve: Curve, path: Path, csv_name: str) -> None:
    plots = ", \\\n     ".join(
        f"'{csv_name}' using 1:{i + 1} with lines title '{col}'" for i, col in enumerate(curve.columns) if i > 0
    )
    text = (
        "set datafile separator ','\n"
        f"set xlabel '{curve.columns[0]}'\n"
        f"plot {plots}\n"
    )
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def write_record(
    curves, out_dir: Path, experiment, params: dict, config_text: str, rerun: str, gnuplot: bool = True
) -> list[str]:
    out_dir.mkdir(parents=True, exist_ok=True)
    files = []
    for c in curves:
        stem = f"{experiment.name}_{c.name}"
        write_csv(c, out_dir / f"{stem}.csv")
        write_meta(c, out_dir / f"{stem}.meta.json", experiment, params, config_text, rerun)
        files += [f"{stem}.csv", f"{stem}.meta.json"]
        if gnuplot:
            write_gnuplot(c, out_dir / f"{stem}.gp", f"{stem}.csv")
            files.append(f"{stem}.gp")
    return files
