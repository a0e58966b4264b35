"""Command-line front end.

    qsuperres <kind> --config <path> [--csv <path>] [--svg <path>] [--threads N]

The subcommand must match the config's [scenario] kind. Results go to
the CSV/SVG paths from the [output] section; command-line flags
override them, and with no sink at all the CSV rows go to stdout.

Exit status: 0 on success, 2 for config problems (reported with line
and column, nothing written), 3 for numeric or I/O failures.

QSUPERRES_THREADS, when set, overrides --threads.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys

import numpy as np

from . import _backend
from .config import ScenarioConfig, load_config
from .errors import ConfigError, NumericError
from .fisher import rate_ratio, resolution_scan
from .noon import NoonScenario, default_profile_grid, noon_conditioned, noon_full, noon_reduced
from .objects import SlitObject, default_object
from .optics import DetectionRegion, OpticalSystem
from .signals import MeasurementPlan, Strategy, signal, standard_grid
from .svgplot import Curve, render_plot

__all__ = ["main", "run"]

_COLUMN_TAG = {Strategy.FULL: "gn", Strategy.REDUCED: "gn1", Strategy.BUCKET: "hybrid"}
_CURVE_NAME = {Strategy.FULL: "full (G^n)", Strategy.REDUCED: "reduced (G^n-1)",
               Strategy.BUCKET: "hybrid (G^n-1,1)"}


def _object_from(cfg: ScenarioConfig, system: OpticalSystem) -> SlitObject:
    w = cfg.slit_width * system.d_R
    origin = None if cfg.origin is None else cfg.origin * system.d_R
    if isinstance(cfg.amplitudes, str):
        return default_object(cfg.amplitudes, w, origin)
    if origin is None:
        origin = -0.5 * len(cfg.amplitudes) * w
    return SlitObject(slit_width=w, amplitudes=cfg.amplitudes, origin=origin)


def _amplitudes_from(cfg: ScenarioConfig) -> tuple[float, ...]:
    if isinstance(cfg.amplitudes, str):
        return default_object(cfg.amplitudes, 1.0).amplitudes
    return cfg.amplitudes


def _region_from(cfg: ScenarioConfig) -> DetectionRegion:
    return DetectionRegion(cfg.k_lo * cfg.k_max, cfg.k_hi * cfg.k_max)


def _run_signal(cfg: ScenarioConfig):
    system = OpticalSystem(k_max=cfg.k_max)
    obj = _object_from(cfg, system)
    grid = standard_grid(obj, system)
    header = ["r/d_R"]
    columns = [grid / system.d_R]
    for strat in cfg.strategies():
        region = _region_from(cfg) if strat is Strategy.BUCKET else None
        plan = MeasurementPlan(strat, cfg.n, grid, region)
        columns.append(signal(obj, system, plan).values)
        header.append(f"S_{_COLUMN_TAG[strat]}")
    title = f"n = {cfg.n} signal profiles, slit width {cfg.slit_width:g} d_R"
    return header, columns, dict(x_label="detector position r / d_R",
                                 y_label="coincidence signal", title=title)


def _run_fisher_scan(cfg: ScenarioConfig):
    system = OpticalSystem(k_max=cfg.k_max)
    amps = _amplitudes_from(cfg)
    d_values = np.linspace(cfg.d_min, cfg.d_max, cfg.points) * system.d_R
    header = ["d/d_R"]
    columns = [d_values / system.d_R]
    for strat in cfg.strategies():
        region = _region_from(cfg) if strat is Strategy.BUCKET else None
        scan = resolution_scan(strat, amps, system, cfg.n, d_values, region)
        columns.append(np.asarray([pt.trace_inv for pt in scan.points]))
        header.append(f"TrFinv_{_COLUMN_TAG[strat]}")
    title = f"n = {cfg.n} estimation cost vs slit width"
    return header, columns, dict(x_label="slit width d / d_R",
                                 y_label="Tr F^-1 per detected event",
                                 title=title, log_y=True, h_line=cfg.n_max)


def _run_rate_ratio(cfg: ScenarioConfig):
    system = OpticalSystem(k_max=cfg.k_max)
    amps = _amplitudes_from(cfg)
    d_values = np.linspace(cfg.d_min, cfg.d_max, cfg.points) * system.d_R
    hybrid = resolution_scan(Strategy.BUCKET, amps, system, cfg.n, d_values,
                             _region_from(cfg))
    full = resolution_scan(Strategy.FULL, amps, system, cfg.n, d_values)
    ratio = rate_ratio(hybrid, full)
    d_kept = np.asarray([d for d, _ in ratio.entries])
    header = ["d/d_R", "rate_hybrid_over_gn"]
    columns = [d_kept / system.d_R, np.asarray([v for _, v in ratio.entries])]
    title = f"n = {cfg.n} hybrid vs full detection rate"
    return header, columns, dict(x_label="slit width d / d_R",
                                 y_label="rate ratio", title=title)


def _run_noon_demo(cfg: ScenarioConfig):
    system = OpticalSystem(k_max=cfg.k_max)
    sc = NoonScenario(n=cfg.n, half_separation=cfg.slit_width * system.d_R,
                      system=system)
    points = 1001 if cfg.points is None else cfg.points
    if points < 3 or points % 2 == 0:
        raise ConfigError(f"noon-demo needs an odd [scan] points >= 3, got {points}")
    grid = default_profile_grid(sc, points)
    k_dark = 0.5 * math.pi / sc.half_separation
    header = ["r/d_R", "constructive", "incoherent", "destructive"]
    columns = [grid / system.d_R, noon_full(sc, grid), noon_reduced(sc, grid),
               noon_conditioned(sc, grid, k_dark)]
    title = f"n = {cfg.n} two-point profiles, separation {2 * cfg.slit_width:g} d_R"
    return header, columns, dict(x_label="detector position r / d_R",
                                 y_label="profile", title=title)


_RUNNERS = {
    "signal": _run_signal,
    "fisher-scan": _run_fisher_scan,
    "rate-ratio": _run_rate_ratio,
    "noon-demo": _run_noon_demo,
}


def _write_csv(stream, header, columns):
    writer = csv.writer(stream)
    writer.writerow(header)
    for row in zip(*columns):
        writer.writerow([repr(float(v)) for v in row])


def _write_svg(path, header, columns, plot_kwargs):
    x = tuple(float(v) for v in columns[0])
    curves = [Curve(label=name, x=x, y=tuple(float(v) for v in col))
              for name, col in zip(header[1:], columns[1:])]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(render_plot(curves, **plot_kwargs))


def _curve_labels(cfg: ScenarioConfig, header):
    # nicer legend names for strategy columns; others keep their header
    names = {f"TrFinv_{_COLUMN_TAG[s]}": _CURVE_NAME[s] for s in Strategy}
    names.update({f"S_{_COLUMN_TAG[s]}": _CURVE_NAME[s] for s in Strategy})
    return [names.get(h, h) for h in header]


def _apply_threads(cli_threads: int | None):
    env = os.environ.get(_backend.ENV_THREADS, "").strip()
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ConfigError(f"{_backend.ENV_THREADS} must be an integer, "
                              f"got {env!r}") from None
        _backend.set_threads(n)
    elif cli_threads is not None:
        _backend.set_threads(cli_threads)


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsuperres",
        description="n-photon superresolution imaging scenarios")
    sub = parser.add_subparsers(dest="kind", required=True)
    for kind in _RUNNERS:
        p = sub.add_parser(kind, help=f"run a {kind} scenario")
        p.add_argument("--config", required=True, help="scenario config file")
        p.add_argument("--csv", help="write results to this CSV file")
        p.add_argument("--svg", help="plot results to this SVG file")
        p.add_argument("--threads", type=int,
                       help="numba thread count (QSUPERRES_THREADS wins)")
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if cfg.kind != args.kind:
            raise ConfigError(
                f"config is a {cfg.kind!r} scenario; run 'qsuperres {cfg.kind}'")
        _apply_threads(args.threads)
        header, columns, plot_kwargs = _RUNNERS[cfg.kind](cfg)
    except ConfigError as exc:
        print(f"qsuperres: config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # numeric failure anywhere in the pipeline
        print(f"qsuperres: error: {exc}", file=sys.stderr)
        return 3

    csv_path = args.csv or cfg.csv
    svg_path = args.svg or cfg.svg
    try:
        if csv_path:
            with open(csv_path, "w", encoding="utf-8", newline="") as fh:
                _write_csv(fh, header, columns)
            print(f"wrote {csv_path}")
        if svg_path:
            labels = _curve_labels(cfg, header)
            _write_svg(svg_path, labels, columns, plot_kwargs)
            print(f"wrote {svg_path}")
        if not csv_path and not svg_path:
            _write_csv(sys.stdout, header, columns)
    except (OSError, ValueError, NumericError) as exc:
        print(f"qsuperres: error: {exc}", file=sys.stderr)
        return 3
    return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
