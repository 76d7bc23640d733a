"""Time the compiled zonal kernels against the NumPy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 20]
"""
import argparse
import timeit

import numpy as np
from scipy.special import roots_jacobi

from sharptrace import _zonal_py

try:
    from sharptrace import _zonal
except ImportError:
    _zonal = None


CASES = [(200, 64), (400, 128), (2000, 256)]


def _args(n, K, d=4.0):
    lam = 0.5 * (d - 2)
    t, _ = roots_jacobi(n, 0.5 * (d - 3), 0.5 * (d - 3))
    c = np.random.default_rng(0).standard_normal(K + 1)
    return t, c, lam, 1.0 / np.sqrt(2 * np.pi**2)


def bench(mod, name, n, K, repeat):
    t, c, lam, y0 = _args(n, K)
    if name == "table":
        fn = lambda: mod.zonal_table(t, K, lam, y0)  # noqa: E731
    else:
        fn = lambda: mod.zonal_clenshaw(c, t, lam, y0)  # noqa: E731
    fn()
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    if _zonal is None:
        print("compiled extension not built; only the NumPy backend is available")
    print(f"{'kernel':<10}{'nodes':>7}{'K':>6}{'numpy [ms]':>13}{'cython [ms]':>13}{'speedup':>10}")
    for kernel in ("table", "clenshaw"):
        for n, K in CASES:
            py = bench(_zonal_py, kernel, n, K, args.repeat) * 1e3
            if _zonal is None:
                print(f"{kernel:<10}{n:>7}{K:>6}{py:>13.3f}{'-':>13}{'-':>10}")
                continue
            cy = bench(_zonal, kernel, n, K, args.repeat) * 1e3
            print(f"{kernel:<10}{n:>7}{K:>6}{py:>13.3f}{cy:>13.3f}{py / cy:>9.1f}x")


if __name__ == "__main__":
    main()
