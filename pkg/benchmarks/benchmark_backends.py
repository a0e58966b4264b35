"""Compare the numba and numpy kernel backends on representative workloads.

Runs each workload on both backends (numba is skipped when not
importable), reporting the best wall time over a few repeats and the
speedup. The first numba call pays JIT compilation; a warmup round
keeps that out of the timings.

Usage:
    python3 benchmarks/benchmark_backends.py [--repeats N] [--deltas N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qsuperres import (DetectionRegion, OpticalSystem, Strategy,
                       default_object, resolution_scan)
from qsuperres._backend import resolve_backend, use_backend
from qsuperres.errors import DomainError


def _timed(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _quadrature_inputs(system, n_pixels=15, nodes_per_pixel=32, grid_points=201):
    """Realistic (s_nodes, s_weights, r_grid) shapes for the table kernels."""
    rng = np.random.default_rng(7)
    width = 0.3 * system.d_R
    lefts = width * np.arange(n_pixels) - 0.5 * n_pixels * width
    offs = np.sort(rng.uniform(0.0, width, size=(n_pixels, nodes_per_pixel)), axis=1)
    s_nodes = lefts[:, None] + offs
    s_weights = np.full_like(s_nodes, width / nodes_per_pixel)
    r_grid = np.linspace(-2.0, 2.0, grid_points) * system.d_R
    return s_nodes, s_weights, r_grid


def build_workloads(system, n_deltas):
    s_nodes, s_weights, r_grid = _quadrature_inputs(system)
    deltas = np.linspace(0.0, 8.0, n_deltas)
    amps = default_object("A", slit_width=1.0).amplitudes
    region = DetectionRegion(1.0, 2.0)
    d_point = np.array([0.25 * system.d_R])

    def kernel_workloads(mod):
        return [
            ("sombrero, %.0e points" % n_deltas,
             lambda: mod.somb(deltas)),
            ("annulus kernel, %.0e points" % n_deltas,
             lambda: mod.annulus_kernel(deltas, 1.0, 2.0)),
            ("coefficient table (15 px, 201 pts, n=4)",
             lambda: mod.pixel_coeff_table(s_nodes, s_weights, r_grid,
                                           system.k_max, 4)),
            ("pair overlap tensor (15 px, 201 pts, n=4)",
             lambda: mod.pair_overlap_tensor(s_nodes, s_weights, r_grid,
                                             system.k_max, 3, 1.0, 2.0)),
        ]

    def fisher_point():
        resolution_scan(Strategy.BUCKET, amps, system, 4, d_point, region)

    return kernel_workloads, ("bucket Fisher point (n=4, object A)", fisher_point)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repeats per workload (best is kept)")
    parser.add_argument("--deltas", type=int, default=1_000_000,
                        help="array length for the pointwise kernels")
    args = parser.parse_args()

    system = OpticalSystem(k_max=1.0)
    kernel_workloads, (e2e_name, e2e_fn) = build_workloads(system, args.deltas)

    backends = {}
    backends["numpy"] = resolve_backend("numpy")[1]
    try:
        backends["numba"] = resolve_backend("numba")[1]
    except DomainError as exc:
        print(f"numba backend unavailable ({exc}); timing numpy only")

    results = {}
    for name, mod in backends.items():
        for label, fn in kernel_workloads(mod):
            fn()  # warmup; compiles on numba
            results.setdefault(label, {})[name] = _timed(fn, args.repeats)

    for name in backends:
        use_backend(name)
        e2e_fn()
        results.setdefault(e2e_name, {})[name] = _timed(e2e_fn, args.repeats)

    width = max(len(label) for label in results)
    header = f"{'workload':<{width}}  {'numpy':>10}  {'numba':>10}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, times in results.items():
        t_np = times["numpy"]
        if "numba" in times:
            t_nb = times["numba"]
            print(f"{label:<{width}}  {t_np:>9.4f}s  {t_nb:>9.4f}s  "
                  f"{t_np / t_nb:>7.1f}x")
        else:
            print(f"{label:<{width}}  {t_np:>9.4f}s  {'-':>10}  {'-':>8}")


if __name__ == "__main__":
    main()
