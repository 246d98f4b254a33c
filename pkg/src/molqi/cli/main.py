"""molqi command line: run, sweep, list-experiments."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from ..errors import ConfigError, NumericalError
from .config import ExperimentConfig, load_config, render_config
from .experiments import EXPERIMENTS
from .output import write_record

log = logging.getLogger("molqi")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_IO = 0, 2, 3, 4


def _out_dir(cfg: ExperimentConfig, override: str | None) -> Path:
    return Path(override or cfg.output or f"molqi-out/{cfg.experiment}")


def run(cfg: ExperimentConfig, out: Path, gnuplot: bool = True) -> list[str]:
    exp = cfg.spec
    curves = exp.runner(cfg.params)
    return write_record(curves, out, exp, cfg.params, cfg.source, render_config(exp.name, cfg.params), gnuplot)


def _run_point(job):
    idx, name, params, source, out, gnuplot = job
    point = ExperimentConfig(name, params, source=source)
    try:
        files = run(point, Path(out), gnuplot)
        return idx, "ok", files, None
    except (NumericalError, ValueError, ArithmeticError) as exc:
        return idx, "failed", [], f"{type(exc).__name__}: {exc}"


def sweep(cfg: ExperimentConfig, out: Path, workers: int = 1, gnuplot: bool = True) -> dict:
    points = cfg.points()
    out.mkdir(parents=True, exist_ok=True)
    jobs = [
        (i, cfg.experiment, p, cfg.source, str(out / f"point_{i:04d}"), gnuplot) for i, p in enumerate(points)
    ]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_point, jobs))
    else:
        results = [_run_point(j) for j in jobs]
    entries = []
    for (i, _, params, _, path, _), (_, status, files, err) in zip(jobs, results):
        entries.append({
            "index": i,
            "dir": Path(path).name,
            "axes": {k: params[k] for k in cfg.sweep},
            "status": status,
            "files": files,
            "error": err,
        })
        if err:
            log.warning("point %d failed: %s", i, err)
    index = {"experiment": cfg.experiment, "axes": cfg.sweep, "points": entries}
    with open(out / "index.json", "w", newline="\n") as fh:
        json.dump(index, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return index


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="molqi", description="Entanglement in molecular dissociation: numerical experiments.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run one config")
    r.add_argument("config", help="INI config, or a .meta.json sidecar to regenerate its record")
    r.add_argument("--out", help="output directory (overrides [run] output)")
    r.add_argument("--no-gnuplot", action="store_true")
    s = sub.add_parser("sweep", help="run the Cartesian product of the [sweep] axes")
    s.add_argument("config")
    s.add_argument("--out")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--no-gnuplot", action="store_true")
    sub.add_parser("list-experiments", help="print experiment ids and parameters")
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.command == "list-experiments":
        for name, exp in EXPERIMENTS.items():
            keys = ", ".join(f"{k}={p.default!r}" for k, p in exp.schema.items())
            print(f"{name}: {exp.figure}\n    {keys}")
        return EXIT_OK
    try:
        cfg = load_config(args.config)
        out = _out_dir(cfg, args.out)
        if args.command == "run":
            if cfg.sweep:
                raise ConfigError("sweep: config defines sweep axes; use `molqi sweep`")
            files = run(cfg, out, not args.no_gnuplot)
            log.info("wrote %d files to %s", len(files), out)
            return EXIT_OK
        if args.workers < 1:
            raise ConfigError("--workers: must be >= 1")
        index = sweep(cfg, out, args.workers, not args.no_gnuplot)
        if all(e["status"] != "ok" for e in index["points"]):
            print("molqi: every sweep point failed; see index.json", file=sys.stderr)
            return EXIT_NUMERICAL
        return EXIT_OK
    except ConfigError as exc:
        print(f"molqi: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, ValueError, ArithmeticError) as exc:
        print(f"molqi: numerical error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"molqi: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
