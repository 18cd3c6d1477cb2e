"""Numeric hot paths for partition ranking.

Scoring all 2,627,625 partitions of a 16-word puzzle is the one loop that
dominates runtime, so it has two interchangeable implementations:

* numba @njit kernels (default whenever numba imports), and
* a pure-numpy broadcast path.

Set CONNECTIONS_NO_NUMBA=1 to force the numpy path; the flag is read on
every call so a single process can exercise both. Both paths emit partition
data in the canonical order of `combinatorics.enumerate_partitions`, flat
index and all, and `benchmarks/bench_partitions.py` times them against each
other.
"""

from __future__ import annotations

import os
import threading
from itertools import combinations

import numpy as np

from .combinatorics import GROUP_SIZE, group_count, partition_count

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


def numba_disabled_by_env() -> bool:
    return os.environ.get("CONNECTIONS_NO_NUMBA", "").strip().lower() in {
        "1",
        "true",
        "yes",
        "on",
    }


def active_backend() -> str:
    return "numpy" if (not HAS_NUMBA or numba_disabled_by_env()) else "numba"


def _combo_array(n: int, k: int) -> np.ndarray:
    return np.array(list(combinations(range(n), k)), dtype=np.int64)


# ---------------------------------------------------------------------------
# group scoring: mean pairwise similarity for every 4-subset
# ---------------------------------------------------------------------------

_PAIRS = [(a, b) for a in range(GROUP_SIZE) for b in range(a + 1, GROUP_SIZE)]


def all_group_scores(sim: np.ndarray) -> np.ndarray:
    """Mean of the six pairwise similarities for every 4-subset of the words,
    in `enumerate_groups` order."""
    n = sim.shape[0]
    combos = _combo_array(n, GROUP_SIZE)
    total = np.zeros(len(combos), dtype=np.float64)
    for a, b in _PAIRS:
        total += sim[combos[:, a], combos[:, b]]
    return total / len(_PAIRS)


# ---------------------------------------------------------------------------
# partition rank table: for each canonical partition of 16, the lexicographic
# ranks of its four groups among all C(16,4) subsets
# ---------------------------------------------------------------------------


def _group_rank_lookup(n: int) -> np.ndarray:
    """Dense (n,n,n,n) table mapping an ascending 4-subset to its rank."""
    combos = _combo_array(n, GROUP_SIZE)
    lookup = np.full((n,) * GROUP_SIZE, -1, dtype=np.int32)
    lookup[combos[:, 0], combos[:, 1], combos[:, 2], combos[:, 3]] = np.arange(
        len(combos), dtype=np.int32
    )
    return lookup


@njit(cache=True)
def _rank_table_16_numba(c15, c11, c7, lookup):  # pragma: no cover - compiled
    n1, n2, n3 = c15.shape[0], c11.shape[0], c7.shape[0]
    out = np.empty((n1 * n2 * n3, 4), np.int16)
    r1 = np.empty(12, np.int64)
    r2 = np.empty(8, np.int64)
    used1 = np.zeros(16, np.bool_)
    used2 = np.zeros(12, np.bool_)
    row = 0
    for i1 in range(n1):
        a1, b1, d1 = c15[i1, 0] + 1, c15[i1, 1] + 1, c15[i1, 2] + 1
        rank1 = lookup[0, a1, b1, d1]
        used1[:] = False
        used1[0] = used1[a1] = used1[b1] = used1[d1] = True
        k = 0
        for w in range(16):
            if not used1[w]:
                r1[k] = w
                k += 1
        for i2 in range(n2):
            a2, b2, d2 = c11[i2, 0] + 1, c11[i2, 1] + 1, c11[i2, 2] + 1
            rank2 = lookup[r1[0], r1[a2], r1[b2], r1[d2]]
            used2[:] = False
            used2[0] = used2[a2] = used2[b2] = used2[d2] = True
            k = 0
            for w in range(12):
                if not used2[w]:
                    r2[k] = r1[w]
                    k += 1
            for i3 in range(n3):
                a3, b3, d3 = c7[i3, 0] + 1, c7[i3, 1] + 1, c7[i3, 2] + 1
                rank3 = lookup[r2[0], r2[a3], r2[b3], r2[d3]]
                g4_0 = -1
                g4_1 = -1
                g4_2 = -1
                g4_3 = -1
                for w in range(1, 8):
                    if w == a3 or w == b3 or w == d3:
                        continue
                    if g4_0 < 0:
                        g4_0 = r2[w]
                    elif g4_1 < 0:
                        g4_1 = r2[w]
                    elif g4_2 < 0:
                        g4_2 = r2[w]
                    else:
                        g4_3 = r2[w]
                rank4 = lookup[g4_0, g4_1, g4_2, g4_3]
                out[row, 0] = rank1
                out[row, 1] = rank2
                out[row, 2] = rank3
                out[row, 3] = rank4
                row += 1
    return out


def _complement_columns(chosen: np.ndarray, width: int) -> np.ndarray:
    """Per row of `chosen`, the ascending indices of range(width) not chosen."""
    rows = chosen.shape[0]
    mask = np.ones((rows, width), dtype=bool)
    mask[np.arange(rows)[:, None], chosen] = False
    return np.nonzero(mask)[1].reshape(rows, width - chosen.shape[1])


def _rank_table_16_numpy(c15, c11, c7, lookup) -> np.ndarray:
    n1, n2, n3 = len(c15), len(c11), len(c7)

    g1 = np.concatenate([np.zeros((n1, 1), np.int64), c15 + 1], axis=1)
    r1 = _complement_columns(g1, 16)  # (n1, 12)

    sel2 = np.concatenate([np.zeros((n2, 1), np.int64), c11 + 1], axis=1)
    g2 = r1[:, sel2]  # (n1, n2, 4)
    r2 = r1[:, _complement_columns(sel2, 12)]  # (n1, n2, 8)

    sel3 = np.concatenate([np.zeros((n3, 1), np.int64), c7 + 1], axis=1)
    g3 = r2[:, :, sel3]  # (n1, n2, n3, 4)
    g4 = r2[:, :, _complement_columns(sel3, 8)]  # (n1, n2, n3, 4)

    rank1 = lookup[g1[:, 0], g1[:, 1], g1[:, 2], g1[:, 3]]
    rank2 = lookup[g2[..., 0], g2[..., 1], g2[..., 2], g2[..., 3]]
    rank3 = lookup[g3[..., 0], g3[..., 1], g3[..., 2], g3[..., 3]]
    rank4 = lookup[g4[..., 0], g4[..., 1], g4[..., 2], g4[..., 3]]

    out = np.empty((n1, n2, n3, 4), dtype=np.int16)
    out[..., 0] = rank1[:, None, None]
    out[..., 1] = rank2[:, :, None]
    out[..., 2] = rank3
    out[..., 3] = rank4
    return out.reshape(-1, 4)


_TABLE_LOCK = threading.Lock()
_TABLE_CACHE: dict[str, np.ndarray] = {}


def partition_rank_table(backend: str | None = None) -> np.ndarray:
    """(2627625, 4) int16 array: group ranks of every canonical partition of
    16 words. Cached per backend; both backends produce identical tables."""
    backend = backend or active_backend()
    with _TABLE_LOCK:
        cached = _TABLE_CACHE.get(backend)
        if cached is not None:
            return cached
        c15 = _combo_array(15, 3)
        c11 = _combo_array(11, 3)
        c7 = _combo_array(7, 3)
        lookup = _group_rank_lookup(16)
        if backend == "numba":
            table = _rank_table_16_numba(c15, c11, c7, lookup)
        else:
            table = _rank_table_16_numpy(c15, c11, c7, lookup)
        assert table.shape == (partition_count(16), 4)
        _TABLE_CACHE[backend] = table
        return table


# ---------------------------------------------------------------------------
# partition scoring: sum the four group scores of every partition
# ---------------------------------------------------------------------------


@njit(cache=True)
def _partition_scores_numba(group_scores, table):  # pragma: no cover - compiled
    rows = table.shape[0]
    out = np.empty(rows, np.float64)
    for i in range(rows):
        out[i] = (
            group_scores[table[i, 0]]
            + group_scores[table[i, 1]]
            + group_scores[table[i, 2]]
            + group_scores[table[i, 3]]
        )
    return out


def _partition_scores_numpy(group_scores, table) -> np.ndarray:
    return group_scores[table].sum(axis=1)


def partition_scores(
    group_scores: np.ndarray, backend: str | None = None
) -> np.ndarray:
    """Score of every canonical 16-word partition: the sum of its four group
    scores. `group_scores` must be in `enumerate_groups(16)` order."""
    if group_scores.shape[0] != group_count(16):
        raise ValueError(
            f"need scores for all {group_count(16)} groups, got {group_scores.shape[0]}"
        )
    backend = backend or active_backend()
    table = partition_rank_table(backend)
    scores = np.ascontiguousarray(group_scores, dtype=np.float64)
    if backend == "numba":
        return _partition_scores_numba(scores, table)
    return _partition_scores_numpy(scores, table)


def rank_partitions(group_scores: np.ndarray, backend: str | None = None):
    """Descending-score order over all partitions, ties broken by canonical
    flat index. Returns (order, scores)."""
    scores = partition_scores(group_scores, backend=backend)
    order = np.argsort(-scores, kind="stable")
    return order, scores
