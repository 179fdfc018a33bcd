"""Compare the numba and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5]

Each workload runs once per backend to warm up (numba compiles on first
call), then ``--repeat`` timed runs; the best time is reported.  Results
must agree across backends or the script exits non-zero.
"""
import argparse
import sys
import time

import numpy as np

from f1geom import _accel, kernels
from f1geom import counting as C
from f1geom import loose_graph as lg
from f1geom import monoid as mn


def workloads():
    quadric = C.quadric_terms(1, -1)
    c6 = lg.theta(lg.cycle_graph(6))
    cube = mn.parse_presentation("monoid M; gen X free; gen Y free; gen Z free; gen U inv; rel X*Y*Z")
    n = 2 ** 10 + 2 ** 5 + 1
    sub = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    S = list(range(0, n, 7))
    return [
        ("quadric q=31", lambda: C.count_hypersurface(quadric, 4, 31)),
        ("C6 scheme q=7", lambda: C.count_points(c6, 7, brute=True)),
        ("presentation q=31", lambda: C.count_points(cube, 31, brute=True)),
        (f"differences Z{n}", lambda: kernels.difference_counts(S, sub).tolist()),
    ]


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not _accel.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return 1
    before = _accel.backend()
    ok = True
    print(f"{'workload':24s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}")
    try:
        for name, fn in workloads():
            results, times = {}, {}
            for backend in ("numba", "numpy"):
                _accel.set_backend(backend)
                results[backend] = fn()
                times[backend] = best_time(fn, args.repeat)
            agree = results["numba"] == results["numpy"]
            ok &= agree
            print(f"{name:24s} {times['numba']:10.4f} {times['numpy']:10.4f} "
                  f"{times['numpy'] / times['numba']:7.1f}x" + ("" if agree else "  MISMATCH"))
    finally:
        _accel.set_backend(before)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
