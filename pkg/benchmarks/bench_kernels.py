"""Compare the numba and numpy modular linear-algebra kernels.

    python3 benchmarks/bench_kernels.py [--sizes 32 64 128] [--repeat 5]

Both variants are called directly, so one run covers both backends regardless
of WITTKIT_DISABLE_NUMBA. Results are checked for agreement before timing.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from wittkit import kernels

P = 2_147_483_629  # largest prime below 2**31


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[32, 64, 128, 256])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not kernels.HAVE_NUMBA:
        print("numba unavailable or disabled; timing the numpy kernels only")
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<8}{'n':>6}{'numpy s':>12}{'numba s':>12}{'speedup':>10}")
    for n in args.sizes:
        A = rng.integers(0, P, size=(n, n), dtype=np.int64)
        B = rng.integers(0, P, size=(n, n), dtype=np.int64)
        cases = {
            "matmul": (kernels.matmul_mod_numpy, kernels.matmul_mod_numba, (A, B, P)),
            "rank": (kernels.rank_mod_numpy, kernels.rank_mod_numba, (A, P)),
            "det": (kernels.det_mod_numpy, kernels.det_mod_numba, (A, P)),
        }
        for name, (slow, fast, call) in cases.items():
            t_np = best_of(lambda: slow(*call), args.repeat)
            if kernels.HAVE_NUMBA:
                ref, got = slow(*call), fast(*call)  # also triggers compilation
                if not np.array_equal(np.asarray(ref), np.asarray(got)):
                    raise SystemExit(f"{name} n={n}: backends disagree")
                t_nb = best_of(lambda: fast(*call), args.repeat)
                print(f"{name:<8}{n:>6}{t_np:>12.5f}{t_nb:>12.5f}{t_np / t_nb:>10.1f}")
            else:
                print(f"{name:<8}{n:>6}{t_np:>12.5f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
