"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times each kernel on both backends, then an end-to-end workload (hulls and
alternating-cycle checks) with the backend switched underneath.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from hs_inscribe import _kernels_py, kernels
from hs_inscribe.admissible import check_C2
from hs_inscribe.graphs import random_instances
from hs_inscribe.ideal_polyhedron import generate_two_circle

try:
    from hs_inscribe import _kernels as _compiled
except ImportError:
    _compiled = None


def random_csr(rng, n, m):
    tails = rng.integers(0, n, size=m)
    heads = rng.integers(0, n, size=m)
    order = np.argsort(tails, kind="stable")
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, tails + 1, 1)
    return np.cumsum(indptr), heads[order].astype(np.int64)


def kernel_cases(rng):
    pts = rng.normal(size=(4000, 4, 3))
    normals = np.ascontiguousarray(rng.normal(size=(200, 3)))
    offsets = rng.normal(size=200)
    p = rng.normal(size=3)
    indptr, indices = random_csr(rng, 2000, 6000)

    def orient(mod):
        return lambda: [mod.orient3d(a, b, c, d) for a, b, c, d in pts]

    return {
        "orient3d x4000": orient,
        "plane_distances 200 planes": lambda mod: (lambda: mod.plane_distances(normals, offsets, p)),
        "scc_labels n=2000 m=6000": lambda mod: (lambda: mod.scc_labels(2000, indptr, indices)),
    }


def end_to_end():
    rng = np.random.default_rng(1)
    graphs = random_instances(rng, 150, nmin=10, nmax=14)
    phases = [sorted(rng.uniform(0, 6.28, size=6)) for _ in range(20)]

    def work():
        for g in graphs:
            check_C2(g)
        for ph in phases:
            generate_two_circle(6, 6, 2.0, ph, None)

    return work


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _compiled is None:
        print("compiled extension not built; only the Python backend is available")
        return
    rng = np.random.default_rng(0)
    print(f"{'case':32s} {'cython [ms]':>12s} {'python [ms]':>12s} {'speed-up':>9s}")
    rows = list(kernel_cases(rng).items())
    for name, make in rows:
        tc = best(make(_compiled), args.repeat) * 1e3
        tp = best(make(_kernels_py), args.repeat) * 1e3
        print(f"{name:32s} {tc:12.3f} {tp:12.3f} {tp / tc:8.1f}x")
    work = end_to_end()
    saved = kernels._impl
    try:
        kernels._impl = _compiled
        tc = best(work, args.repeat) * 1e3
        kernels._impl = _kernels_py
        tp = best(work, args.repeat) * 1e3
    finally:
        kernels._impl = saved
    print(f"{'end-to-end (C2 + hulls)':32s} {tc:12.3f} {tp:12.3f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
