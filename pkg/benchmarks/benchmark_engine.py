#!/usr/bin/env python3
"""Compare the pure-Python and compiled exploration kernels.

Runs identical seeded explorations through both backends, verifies the
results are bit-identical, and reports wall time and queries/second.

Usage: python3 benchmarks/benchmark_engine.py [--repeat N] [--seed S]
"""

from __future__ import annotations

import argparse
import time

from hfreetest import (
    RandomNeighborOracle,
    compiled_available,
    disjoint_copies,
    explore,
    pattern_graph,
)

SCENARIOS = [
    # (label, copies, pad, num_seeds, num_rounds, queries_per_vertex)
    ("small n=300", 100, 0, 240, 6, 12),
    ("medium n=3000", 1000, 0, 240, 6, 12),
    ("deep rounds n=300", 100, 0, 60, 12, 24),
]


def run_backend(graph, seed, num_seeds, num_rounds, qpv, backend):
    oracle = RandomNeighborOracle(graph, seed)
    start = time.perf_counter()
    res = explore(oracle, num_seeds, num_rounds, qpv, backend=backend)
    elapsed = time.perf_counter() - start
    return res, elapsed


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()

    if not compiled_available():
        print("compiled kernel not built; nothing to compare")
        return 1

    h = pattern_graph("k3")
    print(f"{'scenario':<22} {'backend':<10} {'queries':>10} {'ms':>9} {'q/s':>12}")
    for label, copies, pad, num_seeds, num_rounds, qpv in SCENARIOS:
        graph, _ = disjoint_copies(h, copies, pad=pad)
        for backend in ("pure", "compiled"):
            best = None
            queries = None
            ref = None
            for rep in range(args.repeat):
                res, elapsed = run_backend(
                    graph, args.seed, num_seeds, num_rounds, qpv, backend
                )
                best = elapsed if best is None else min(best, elapsed)
                queries = res.total_queries
                ref = res
            rate = queries / best if best else float("inf")
            print(
                f"{label:<22} {backend:<10} {queries:>10} "
                f"{best * 1000:>8.1f}ms {rate:>11.0f}"
            )
            if backend == "pure":
                pure_res = ref
            else:
                same = (
                    pure_res.vertices == ref.vertices
                    and pure_res.edge_round == ref.edge_round
                    and pure_res.queries_per_round == ref.queries_per_round
                )
                print(f"{'':<22} parity: {'bit-identical' if same else 'MISMATCH'}")
                if not same:
                    return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
