#!/usr/bin/env python3
"""Compare the exact rank backends on the matrices of a real cohomology run.

Collects every rank problem posed while computing H^1 of a swallowtail, then
times each backend on the same inputs and checks that the ranks agree.

    python3 benchmarks/bench_rank.py --k 2 --degrees 30 40 50
"""
import argparse
import time

from lagderham import linalg
from lagderham.derham import DeRhamComplex
from lagderham.varieties import lag_ideal


def collect(k, degrees):
    problems = []
    orig = linalg.rank

    def spy(vectors, backend=None):
        vectors = list(vectors)
        problems.append(vectors)
        return orig(vectors, backend)

    linalg.rank = spy
    try:
        C = DeRhamComplex(lag_ideal(2, k))
        for e in degrees:
            C.cohomology_degree(1, e)
    finally:
        linalg.rank = orig
    return problems


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--degrees", type=int, nargs="+", default=[30, 40, 50])
    args = ap.parse_args()

    problems = collect(args.k, args.degrees)
    sizes = [len(p) for p in problems]
    print(f"swallowtail k={args.k}: {len(problems)} rank problems, up to {max(sizes)} vectors")
    results = {}
    for backend in linalg.available_backends():
        t = time.perf_counter()
        ranks = [linalg.rank(p, backend) for p in problems]
        results[backend] = ranks
        print(f"  {backend:>7}: {time.perf_counter() - t:8.3f} s")
    t = time.perf_counter()
    ref = [linalg.rank_fractions(p) for p in problems]
    print(f"  {'rational':>7}: {time.perf_counter() - t:8.3f} s  (Gauss-Jordan reference)")
    for backend, ranks in results.items():
        assert ranks == ref, f"{backend} disagrees with the reference"
    print("all backends agree")


if __name__ == "__main__":
    main()
