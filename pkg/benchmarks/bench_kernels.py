"""Time the window-evaluation kernels on both backends.

Runs each kernel over the same random inputs through the pure-numpy
implementation and, when numba is importable, the jitted one, and prints
mean +/- std per call with the speedup.  The jitted path is warmed up
first so compilation is not billed to the timings.

    python3 benchmarks/bench_kernels.py --size 1000000 --repeats 7
"""

import argparse
import statistics
import time

import numpy as np

from shiftframe.backend import HAS_NUMBA
from shiftframe.generator import _partial_fractions
from shiftframe import _kernels


def cases(size, seed):
    rng = np.random.default_rng(seed)
    x = rng.uniform(-8.0, 8.0, size)
    c = np.pi
    for deltas in ((0.3,), (0.3, -0.2), (0.4, 0.25, -0.15)):
        d = np.asarray(deltas)
        yield f"tp[{len(deltas)}]", "tp", (x, d, _partial_fractions(d), c)
    yield "gauss", "gauss", (x, c)
    yield "onesided", "onesided", (x, 1.0)
    yield "sech", "sech", (x, 2.0)


def timed(fn, args, repeats):
    fn(*args)  # warmup (JIT compile / cache touch)
    out = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        out.append(time.perf_counter() - t0)
    return statistics.mean(out), statistics.stdev(out) if repeats > 1 else 0.0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=1_000_000)
    ap.add_argument("--repeats", type=int, default=7)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if HAS_NUMBA else [])
    if not HAS_NUMBA:
        print("numba not importable: timing the numpy path only")
    print(f"size={args.size}  repeats={args.repeats}")
    print(f"{'kernel':<10}" + "".join(f"{b + ' (ms)':>18}" for b in backends) + f"{'speedup':>10}")
    for label, name, call in cases(args.size, args.seed):
        means = {}
        row = f"{label:<10}"
        for b in backends:
            m, s = timed(_kernels._IMPLS[b][name], call, args.repeats)
            means[b] = m
            row += f"{1e3 * m:>11.2f} +/-{1e3 * s:4.2f}"
        if len(backends) == 2:
            row += f"{means['numpy'] / means['numba']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
