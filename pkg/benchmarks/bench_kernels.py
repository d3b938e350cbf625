"""Benchmark the numba kernels against the pure-numpy fallback.

Run: python3 benchmarks/bench_kernels.py [--repeats N]

Sizes mirror the production defaults: a 4096-point grid, a truncation-256
basis table, and the oscillatory panel batches of the momentum integral.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qsc import _kernels
from qsc.state import default_grid


def time_call(fn, args, repeats, warmup=2):
    for _ in range(warmup):
        fn(*args)
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return np.mean(times), np.std(times)


def build_cases():
    grid = default_grid(256)
    pts = np.ascontiguousarray(grid.points)
    values, derivs = _kernels.numpy_impl["hermite_table"](pts, 256)
    rng = np.random.default_rng(3)
    cr = rng.normal(size=257)
    ci = rng.normal(size=257)
    rho, drho, dpsi2 = _kernels.numpy_impl["density_terms"](cr, ci, values, derivs)
    eps = 1e-13 * rho.max()
    t = np.linspace(np.pi, 600 * np.pi, 200_000)
    return {
        "hermite_table (256 x 4096)": ("hermite_table", (pts, 256)),
        "density_terms (257 x 4096)": ("density_terms", (cr, ci, values, derivs)),
        "trapezoid (4096)": ("trapezoid", (rho, grid.dx)),
        "fisher_integrand (4096)": ("fisher_integrand", (rho, drho, dpsi2, eps)),
        "entropy_integrand (4096)": ("entropy_integrand", (rho,)),
        "klog_integrand (200k)": ("klog_integrand", (t, 3.0)),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args()

    print(f"active backend: {_kernels.ACTIVE_BACKEND}")
    if not _kernels.HAS_NUMBA:
        print("numba unavailable (or disabled via QSC_DISABLE_NUMBA); "
              "only the numpy path can be timed")

    header = f"{'kernel':<28}{'numpy [ms]':>14}{'numba [ms]':>14}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, (name, call_args) in build_cases().items():
        np_mean, np_std = time_call(_kernels.numpy_impl[name], call_args,
                                    args.repeats)
        if _kernels.HAS_NUMBA:
            nb_mean, nb_std = time_call(_kernels.numba_impl[name], call_args,
                                        args.repeats)
            speed = np_mean / nb_mean if nb_mean > 0 else float("inf")
            print(f"{label:<28}{np_mean * 1e3:>9.3f}+-{np_std * 1e3:<4.2f}"
                  f"{nb_mean * 1e3:>9.3f}+-{nb_std * 1e3:<4.2f}{speed:>8.2f}x")
        else:
            print(f"{label:<28}{np_mean * 1e3:>9.3f}+-{np_std * 1e3:<4.2f}"
                  f"{'-':>14}{'-':>9}")


if __name__ == "__main__":
    main()
