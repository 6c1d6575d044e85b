"""Compare the compiled and numpy simulator kernels.

    python benchmarks/bench_kernel.py [--trials N] [--repeat R]

Both kernels consume the same random streams, so the script also checks
that they return identical NDT matrices.
"""

import argparse
import time

import numpy as np

from edgedeploy import SystemParams
from edgedeploy.simulator import CacheModel, SimConfig, available_kernels, simulate_ndt_matrix

CASES = [
    ("whole_file M=7 N_F=500", SystemParams(0.7, 1.5, 60, 1, 5), 7, 500, CacheModel.WHOLE_FILE),
    ("whole_file M=15 N_F=2000", SystemParams(0.3, 1.5, 120, 1, 5), 15, 2000, CacheModel.WHOLE_FILE),
    ("fractional M=12 N_F=500", SystemParams(0.5, 1.0, 120, 2, 5), 12, 500, CacheModel.FRACTIONAL),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=10_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    kernels = available_kernels()
    print(f"kernels: {', '.join(kernels)}; trials={args.trials}, threads={args.threads}")
    print(f"{'case':<28}" + "".join(f"{k:>12}" for k in kernels) + f"{'speedup':>10}  match")
    for name, params, M, n_files, model in CASES:
        config = SimConfig(params, M, n_files=n_files, trials=args.trials, seed=1, cache_model=model)
        timings, outputs = {}, {}
        for k in kernels:
            timings[k], outputs[k] = best_of(
                lambda: simulate_ndt_matrix(config, threads=args.threads, backend=k), args.repeat
            )
        speedup = timings["python"] / timings["cython"] if "cython" in timings else float("nan")
        match = all(np.array_equal(outputs[kernels[0]], o) for o in outputs.values())
        print(f"{name:<28}" + "".join(f"{timings[k]:>11.4f}s" for k in kernels)
              + f"{speedup:>9.1f}x  {match}")


if __name__ == "__main__":
    main()
