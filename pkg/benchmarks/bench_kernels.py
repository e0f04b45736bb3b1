"""Compare the compiled term kernel against its pure Python twin.

Runs the same micro- and workload benchmarks in two subprocesses, one per
backend (CADORDER_PURE_PYTHON=1 forces the fallback), and prints a speedup
table.  Invoke from the repository root:

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --repeat 5 --scale 2
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time


def _workloads(scale):
    from cadorder.generator import GenParams, generate_corpus, random_polynomial
    from cadorder.harness import run_sweep
    from cadorder.heuristics import HeuristicId
    from cadorder.polys import Polynomial, poly_gcd, resultant
    from cadorder.projection import project_cascade

    params = GenParams(n_vars=3, max_tdeg=4, terms=4, coeff_bound=20, seed=99)
    rng = random.Random(7)
    f = random_polynomial(params, rng)
    g = random_polynomial(params, rng)
    corpus = [
        (f"{label}-{i}", p)
        for i, (label, p) in enumerate(
            generate_corpus(
                ["00", "11"],
                scale,
                GenParams(n_vars=3, max_tdeg=3, terms=3, coeff_bound=10, seed=99),
            )
        )
    ]
    ordering = corpus[0][1].ordering("z>y>x")

    def bench_multiply():
        acc = f
        for _ in range(2000 * scale):
            acc = f * g
        return acc

    def bench_gcd():
        a, b = f * g, f * (g + 1)
        for _ in range(50 * scale):
            poly_gcd(a, b)

    def bench_resultant():
        for _ in range(50 * scale):
            resultant(f, g, 0)

    def bench_cascade():
        for _, p in corpus:
            project_cascade(p, ordering, "full")

    def bench_sweep():
        run_sweep(corpus, [HeuristicId.SOTD, HeuristicId.BROWN])

    return [
        ("multiply 3-var tdeg-4", bench_multiply),
        ("gcd of shared-factor products", bench_gcd),
        ("resultant wrt x", bench_resultant),
        ("full projection cascades", bench_cascade),
        ("sweep sotd+brown", bench_sweep),
    ]


def run_child(repeat, scale):
    from cadorder._backend import BACKEND

    results = {"backend": BACKEND, "times": {}}
    for name, fn in _workloads(scale):
        best = min(_timed(fn) for _ in range(repeat))
        results["times"][name] = best
    json.dump(results, sys.stdout)


def _timed(fn):
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="best-of repetitions")
    parser.add_argument("--scale", type=int, default=1, help="workload size multiplier")
    parser.add_argument("--_child", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args(argv)

    if args._child:
        run_child(args.repeat, args.scale)
        return 0

    reports = {}
    for label, force_pure in (("compiled", False), ("pure", True)):
        env = dict(os.environ)
        env.pop("CADORDER_PURE_PYTHON", None)
        if force_pure:
            env["CADORDER_PURE_PYTHON"] = "1"
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--_child",
             "--repeat", str(args.repeat), "--scale", str(args.scale)],
            env=env, capture_output=True, text=True, check=True,
        )
        reports[label] = json.loads(out.stdout)

    if reports["compiled"]["backend"] == reports["pure"]["backend"]:
        print("compiled kernel unavailable; both runs used the pure backend",
              file=sys.stderr)
    width = max(len(n) for n in reports["pure"]["times"])
    print(f"{'benchmark':<{width}}  {'compiled':>10}  {'pure':>10}  {'speedup':>7}")
    for name, pure_t in reports["pure"]["times"].items():
        comp_t = reports["compiled"]["times"][name]
        print(f"{name:<{width}}  {comp_t:>9.4f}s  {pure_t:>9.4f}s  "
              f"{pure_t / comp_t:>6.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
