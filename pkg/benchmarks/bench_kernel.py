#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python fallback.

Runs a set of representative workloads twice — once with whatever kernel
``flatcover.kernel`` selects by default (the compiled extension when it is
importable) and once in a subprocess with ``FLATCOVER_PURE=1`` — and prints
a side-by-side table.  Both runs produce identical exact results; only the
wall time differs.

Usage::

    python3 benchmarks/bench_kernel.py           # full comparison table
    python3 benchmarks/bench_kernel.py --json    # one run, JSON to stdout
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction


def _workloads():
    """Name → zero-argument callable returning a checksum of the result."""
    from flatcover import kernel
    from flatcover.analysis import enumerate_encapsulated, strong_cover
    from flatcover.constructions import (
        gen_three_sets,
        gen_turan_planar,
        random_scene,
    )

    def lp_heavy():
        cover = strong_cover(gen_turan_planar(1, 1, 1, 1).scene, budget=40)
        return sum(cover.nu)

    def arrangement_3d():
        points = enumerate_encapsulated(gen_three_sets(3).scene, budget=40)
        return len(points)

    def random_covers():
        total = 0
        for seed in range(12):
            scene = random_scene(seed, d=2, max_bodies=4, max_hyperplanes=10)
            total += sum(strong_cover(scene, budget=25).nu)
        return total

    def linear_algebra():
        rng = random.Random(7)
        acc = 0
        for _ in range(60):
            rows = [
                [Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(6)]
                for _ in range(5)
            ]
            acc += kernel.rank(rows)
            acc += len(kernel.nullspace(rows, 6))
        return acc

    def point_queries():
        rng = random.Random(11)
        hyperplanes = [
            (
                tuple(Fraction(rng.randint(-5, 5)) for _ in range(2)),
                Fraction(rng.randint(-20, 20), rng.randint(1, 4)),
            )
            for _ in range(80)
        ]
        hyperplanes = [(n, b) for n, b in hyperplanes if any(n)]
        prepared = kernel.prepare_rows(hyperplanes)
        acc = 0
        for _ in range(2000):
            point = (
                Fraction(rng.randint(-100, 100), 7),
                Fraction(rng.randint(-100, 100), 9),
            )
            acc += sum(kernel.sign_profile(prepared, point))
        return acc

    return {
        "strong_cover turan(1,1,1,1)": lp_heavy,
        "encapsulated three_sets(3)": arrangement_3d,
        "strong_cover 12 random scenes": random_covers,
        "rank/nullspace batch": linear_algebra,
        "sign_profile x2000": point_queries,
    }


def run_once():
    from flatcover import kernel

    results = {}
    for name, fn in _workloads().items():
        t0 = time.perf_counter()
        checksum = fn()
        results[name] = {
            "seconds": time.perf_counter() - t0,
            "checksum": checksum,
        }
    return {"implementation": kernel.IMPLEMENTATION, "results": results}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--json", action="store_true",
        help="run the workloads once and print JSON (used for the pure pass)",
    )
    args = parser.parse_args()

    if args.json:
        print(json.dumps(run_once()))
        return

    here = run_once()
    env = dict(os.environ, FLATCOVER_PURE="1")
    child = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--json"],
        env=env, capture_output=True, text=True, check=True,
    )
    pure = json.loads(child.stdout)

    print(f"default kernel: {here['implementation']}")
    print(f"compare kernel: {pure['implementation']}")
    print()
    width = max(len(n) for n in here["results"])
    print(f"{'workload':<{width}}  {'default':>9}  {'pure':>9}  {'speedup':>7}")
    for name, entry in here["results"].items():
        other = pure["results"][name]
        if entry["checksum"] != other["checksum"]:
            raise SystemExit(
                f"checksum mismatch on {name!r}: "
                f"{entry['checksum']} vs {other['checksum']}"
            )
        ratio = other["seconds"] / entry["seconds"] if entry["seconds"] else 0.0
        print(
            f"{name:<{width}}  {entry['seconds']:>8.3f}s  "
            f"{other['seconds']:>8.3f}s  {ratio:>6.2f}x"
        )
    print()
    print("checksums agree between implementations")


if __name__ == "__main__":
    main()
