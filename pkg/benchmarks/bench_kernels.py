"""Benchmark the compiled central-step kernel against the pure-numpy one.

Usage: python benchmarks/bench_kernels.py [repeats]

Times raw kernel applications at several grid sizes, then a full
concentration run, and verifies both kernels produce identical output.
"""

import sys
import time

import numpy as np

from depoflux import SimConfig, State, run
from depoflux import _nt_python

try:
    from depoflux import _nt_cython
except ImportError:
    _nt_cython = None


def time_kernel(kernel, u, v, repeats):
    kernel.nt_apply(u, v, 0.1, 0.3, 1.0)  # warm up
    start = time.perf_counter()
    for _ in range(repeats):
        kernel.nt_apply(u, v, 0.1, 0.3, 1.0)
    return (time.perf_counter() - start) / repeats


def time_run(repeats):
    cfg = SimConfig(eps=0.07)
    left, right = State(1, 1), State(-1, 1.5)
    start = time.perf_counter()
    for _ in range(repeats):
        run(cfg, left, right)
    return (time.perf_counter() - start) / repeats


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 300
    rng = np.random.default_rng(11)

    print(f"{'cells':>8} {'python':>12} {'cython':>12} {'speedup':>9}   max|diff|")
    for n in (500, 2000, 8000, 32000):
        u = rng.normal(0.0, 1.0, n)
        v = rng.uniform(0.05, 5.0, n)
        t_py = time_kernel(_nt_python, u, v, repeats)
        if _nt_cython is None:
            print(f"{n:>8} {t_py * 1e6:>10.1f}us {'-':>12} {'-':>9}")
            continue
        t_cy = time_kernel(_nt_cython, u, v, repeats)
        a1, b1 = _nt_python.nt_apply(u, v, 0.1, 0.3, 1.0)
        a2, b2 = _nt_cython.nt_apply(u, v, 0.1, 0.3, 1.0)
        diff = max(np.max(np.abs(a1 - a2)), np.max(np.abs(b1 - b2)))
        print(
            f"{n:>8} {t_py * 1e6:>10.1f}us {t_cy * 1e6:>10.1f}us {t_py / t_cy:>8.1f}x   {diff:.2e}"
        )

    t = time_run(max(1, repeats // 60))
    from depoflux import kernel_name

    print(f"\nfull run (eps=0.07, 500 cells, t=0.4) with {kernel_name} kernel: {t * 1e3:.1f} ms")
    if _nt_cython is None:
        print("compiled kernel not built; run `python setup.py build_ext --inplace` to compare")


if __name__ == "__main__":
    main()
