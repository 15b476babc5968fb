"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3]

Times the raw rotation scan on random inputs and a full ``select_best`` over
a grid catalogue, once per available backend.
"""

import argparse
import time

import numpy as np

from quadmatch import _kernels, annotate, builtin_fine, generate_grid, select_best
from quadmatch.annotation import Shape


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def kernel_case(m, n, seed=0):
    rng = np.random.default_rng(seed)
    sym = rng.integers(0, 3, size=m).astype(np.int64)
    weights = rng.integers(-3, 4, size=(3, n)).astype(float)
    weights[rng.random((3, n)) < 0.1] = -np.inf
    return sym, weights


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--meshes", type=int, default=500)
    args = ap.parse_args()

    ab = annotate(Shape(((0, 0), (3, 0), (3, 1), (0, 1))), count=400)
    meshes = [generate_grid(2 + k % 47, 48 - k % 47, f"g{k:03d}") for k in range(args.meshes)]
    cases = [(100, 40), (400, 100), (1000, 200)]

    print(f"{'backend':<10} {'case':<26} {'seconds':>9}")
    timings = {}
    for name in sorted(_kernels.BACKENDS):
        with _kernels.using(name):
            for m, n in cases:
                sym, w = kernel_case(m, n)
                dt = best_of(args.repeat, lambda: _kernels.rotation_scores(sym, w, n))
                timings[name, f"scan m={m} n={n}"] = dt
            dt = best_of(args.repeat, lambda: select_best(ab, meshes, builtin_fine(), top_k=1))
            timings[name, f"select {len(meshes)} meshes"] = dt
    for (name, case), dt in timings.items():
        print(f"{name:<10} {case:<26} {dt:>9.4f}")
    if "compiled" in _kernels.BACKENDS:
        print()
        for case in dict.fromkeys(c for _, c in timings):
            print(f"speedup {case:<26} {timings['python', case] / timings['compiled', case]:>6.1f}x")
    else:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
