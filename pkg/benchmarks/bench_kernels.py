"""Throughput comparison of the compiled and pure-numpy streaming kernels.

Usage: python benchmarks/bench_kernels.py [--particles P] [--stats S] [--n N]

Builds one evolution-operator histogram per backend and reports streamed
Green's functions per second, plus a check that the histograms agree.
"""

import argparse
import sys
import time

import numpy as np

from walkfp import kernels
from walkfp.graphs import Graph
from walkfp.walk import (
    WalkSpec,
    effective_matrix,
    enumerate_basis,
    single_particle_propagator,
    state_norms,
)


def make_graph(n: int, seed: int = 7) -> Graph:
    rng = np.random.default_rng(seed)
    a = np.triu(rng.random((n, n)) < 0.4, k=1)
    return Graph(n, a | a.T)


def run(backend, ueff, basis, norms, use_perm, bin_width=1e-6):
    start = time.perf_counter()
    hist = backend.accumulate_bins(ueff, basis, norms, use_perm, bin_width,
                                   0, basis.shape[0])
    return hist, time.perf_counter() - start


def main(argv=None) -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("-p", "--particles", type=int, default=3)
    parser.add_argument("--stats", choices=("boson", "fermion"), default="fermion")
    parser.add_argument("-n", type=int, default=16, help="vertex count")
    args = parser.parse_args(argv)

    g = make_graph(args.n)
    spec = WalkSpec(args.particles, args.stats)
    u1 = single_particle_propagator(g, spec.t)
    ueff = np.ascontiguousarray(effective_matrix(u1, spec))
    basis = enumerate_basis(g.n, spec)
    norms = state_norms(basis, spec)
    elements = basis.shape[0] ** 2
    print(f"n={g.n} p={spec.p} {spec.statistics}: "
          f"{basis.shape[0]} states, {elements:.2e} elements")

    results = {}
    for name in ("compiled", "pure"):
        try:
            backend = kernels.get_backend(name)
        except ImportError:
            print(f"{name:>9}: not available")
            continue
        hist, elapsed = run(backend, ueff, basis, norms, spec.is_boson)
        results[name] = hist
        print(f"{name:>9}: {elapsed:8.3f} s   {elements / elapsed:.3e} elem/s   "
              f"{len(hist)} bins")

    if len(results) == 2:
        same = results["compiled"] == results["pure"]
        print("histograms identical:", same)
        if not same and spec.p <= 4:
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
