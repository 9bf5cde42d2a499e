"""Compare the numba kernels with the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--n-max 10]

Each row reports the best wall time over ``--repeat`` runs after one
warm-up call (so JIT compilation is excluded).
"""

import argparse
import time

import numpy as np

from foldcube import _kernels
from foldcube.cube import build_folded_cube, build_hypercube
from foldcube.matchings import mixed_from_complement_closed_set, remove_matching
from foldcube.permanent import biadjacency


def best_time(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(n_max):
    for n in range(6, n_max + 1):
        g = build_folded_cube(n)
        yield f"all_eccentricities FQ_{n}", lambda u, g=g: _kernels.all_eccentricities(g.indptr, g.indices, use_numba=u)
    for n in range(6, n_max + 1):
        s = [0, (1 << (n - 1)) - 1]
        r = remove_matching(build_folded_cube(n), mixed_from_complement_closed_set(n, s))
        yield f"first_deficit mixed n={n}", lambda u, r=r, n=n: _kernels.first_deficit(r.indptr, r.indices, n - 1, use_numba=u)
    for n in (4, 5):
        mat = biadjacency(build_hypercube(n)).astype(np.float64)
        yield f"permanent Q_{n} ({mat.shape[0]}x{mat.shape[0]})", lambda u, m=mat: _kernels.permanent(m, use_numba=u)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--n-max", type=int, default=10)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        print("numba unavailable or disabled; only the numpy path is timed")
    print(f"{'case':<34}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for name, fn in cases(args.n_max):
        t_np = best_time(lambda: fn(False), args.repeat)
        if _kernels.HAVE_NUMBA:
            t_nb = best_time(lambda: fn(True), args.repeat)
            print(f"{name:<34}{t_np * 1e3:>12.2f}{t_nb * 1e3:>12.2f}{t_np / t_nb:>9.1f}x")
        else:
            print(f"{name:<34}{t_np * 1e3:>12.2f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
