#!/usr/bin/env python3
"""Benchmark the partition-ranking hot path: numba kernels vs pure numpy.

Times the three stages that dominate a challenge-variant solve on a 16-word
puzzle: building the partition rank table (one-time), scoring all 2,627,625
partitions against a similarity table, and the full argsort ranking.

    python3 benchmarks/bench_partitions.py [--repeat N]

CONNECTIONS_NO_NUMBA only affects the default backend selection in the
library; this script always times both paths explicitly.
"""

import argparse
import time

import numpy as np

from connections_toolkit import kernels
from connections_toolkit.combinatorics import partition_count


def timed(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def bench_backend(backend: str, group_scores: np.ndarray, repeat: int) -> dict:
    kernels._TABLE_CACHE.pop(backend, None)
    build_cold, table = timed(lambda: kernels.partition_rank_table(backend), 1)
    build_warm, _ = timed(lambda: kernels.partition_rank_table(backend), repeat)
    score_time, scores = timed(
        lambda: kernels.partition_scores(group_scores, backend), repeat
    )
    rank_time, _ = timed(lambda: kernels.rank_partitions(group_scores, backend), repeat)
    return {
        "build_cold": build_cold,
        "build_cached": build_warm,
        "score": score_time,
        "rank_full": rank_time,
        "scores": scores,
        "table": table,
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3, help="timing repeats (best-of)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    sim = rng.uniform(-1.0, 1.0, (16, 16))
    sim = (sim + sim.T) / 2.0
    np.fill_diagonal(sim, 1.0)
    group_scores = kernels.all_group_scores(sim)

    print(f"partitions: {partition_count(16):,}")
    print(f"numba available: {kernels.HAS_NUMBA}")
    backends = ["numpy"] + (["numba"] if kernels.HAS_NUMBA else [])
    results = {}
    for backend in backends:
        print(f"\n[{backend}]")
        results[backend] = bench_backend(backend, group_scores, args.repeat)
        r = results[backend]
        print(f"  rank-table build (cold):   {r['build_cold'] * 1e3:9.1f} ms")
        print(f"  rank-table build (cached): {r['build_cached'] * 1e3:9.1f} ms")
        print(f"  score all partitions:      {r['score'] * 1e3:9.1f} ms")
        print(f"  score + full argsort:      {r['rank_full'] * 1e3:9.1f} ms")

    if len(results) == 2:
        assert np.array_equal(results["numpy"]["table"], results["numba"]["table"])
        assert np.array_equal(results["numpy"]["scores"], results["numba"]["scores"])
        speedup = results["numpy"]["score"] / results["numba"]["score"]
        print(f"\nbackends agree bit-for-bit; numba scoring speedup: {speedup:.2f}x")


if __name__ == "__main__":
    main()
