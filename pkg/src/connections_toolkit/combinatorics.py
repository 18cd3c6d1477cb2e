"""Enumeration of four-word groups and four-group partitions.

Canonical partition order: the first group always contains the smallest
index, remaining members ascending; the next group contains the smallest
index not yet used, and so on. Enumeration is lexicographic in that
representation, which is also the order the numeric kernels emit, so a flat
partition index means the same thing everywhere.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb
from operator import itemgetter
from typing import Iterator, Sequence

GROUP_SIZE = 4


def group_count(n: int) -> int:
    return comb(n, GROUP_SIZE)


def enumerate_groups(n: int) -> list[tuple[int, int, int, int]]:
    """All 4-subsets of range(n) in lexicographic order, members ascending."""
    if n < GROUP_SIZE:
        raise ValueError(f"need at least {GROUP_SIZE} words, got {n}")
    return list(combinations(range(n), GROUP_SIZE))


def subset_rank(subset: Sequence[int], n: int) -> int:
    """Lexicographic rank of an ascending k-subset of range(n)."""
    k = len(subset)
    rank = 0
    prev = -1
    for pos, x in enumerate(subset):
        for skipped in range(prev + 1, x):
            rank += comb(n - 1 - skipped, k - 1 - pos)
        prev = x
    return rank


def subset_unrank(rank: int, n: int, k: int) -> tuple[int, ...]:
    """Inverse of subset_rank."""
    if not 0 <= rank < comb(n, k):
        raise ValueError(f"rank {rank} out of range for C({n},{k})")
    out = []
    x = 0
    for pos in range(k):
        while True:
            block = comb(n - 1 - x, k - 1 - pos)
            if rank < block:
                break
            rank -= block
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def partition_count(n: int) -> int:
    """Number of ways to split n items into unordered groups of four."""
    _check_partition_size(n)
    total = 1
    while n > GROUP_SIZE:
        total *= comb(n - 1, GROUP_SIZE - 1)
        n -= GROUP_SIZE
    return total


def _check_partition_size(n: int) -> None:
    if n < GROUP_SIZE or n % GROUP_SIZE != 0 or n > 16:
        raise ValueError(f"partition enumeration supports 4, 8, 12, or 16 words, got {n}")


@lru_cache(maxsize=None)
def _selectors(size: int):
    """For a tuple of `size` items: pairs of (group getter, rest getter).

    The group is the leading item plus three companions; getters are
    itemgetters so the inner enumeration loop is pure C-level indexing.
    """
    pairs = []
    for trio in combinations(range(1, size), 3):
        chosen = (0,) + trio
        rest = tuple(i for i in range(size) if i not in chosen)
        pairs.append((itemgetter(*chosen), itemgetter(*rest)))
    return pairs


def _partitions4(items: tuple) -> Iterator[tuple]:
    yield (items,)


def _partitions8(items: tuple) -> Iterator[tuple]:
    for get_g1, get_g2 in _selectors(8):
        yield (get_g1(items), get_g2(items))


def _partitions12(items: tuple) -> Iterator[tuple]:
    sel11, sel7 = _selectors(12), _selectors(8)
    for get_g1, get_r1 in sel11:
        g1 = get_g1(items)
        r1 = get_r1(items)
        for get_g2, get_g3 in sel7:
            yield (g1, get_g2(r1), get_g3(r1))


def _partitions16(items: tuple) -> Iterator[tuple]:
    sel15, sel11, sel7 = _selectors(16), _selectors(12), _selectors(8)
    for get_g1, get_r1 in sel15:
        g1 = get_g1(items)
        r1 = get_r1(items)
        for get_g2, get_r2 in sel11:
            g2 = get_g2(r1)
            r2 = get_r2(r1)
            for get_g3, get_g4 in sel7:
                yield (g1, g2, get_g3(r2), get_g4(r2))


_GENERATORS = {4: _partitions4, 8: _partitions8, 12: _partitions12, 16: _partitions16}


def enumerate_partitions(items: Sequence | int) -> Iterator[tuple]:
    """Stream every partition of the items into groups of four, canonical
    order, no duplicates. Accepts a sequence (16- or 12-word play sets) or an
    int n meaning range(n)."""
    seq = tuple(range(items)) if isinstance(items, int) else tuple(items)
    _check_partition_size(len(seq))
    return _GENERATORS[len(seq)](seq)


def partition_level_sizes(n: int) -> list[int]:
    """Radix of the flat partition index: choices at each grouping level."""
    _check_partition_size(n)
    sizes = []
    while n > GROUP_SIZE:
        sizes.append(comb(n - 1, GROUP_SIZE - 1))
        n -= GROUP_SIZE
    return sizes


def partition_at(n: int, flat_index: int) -> tuple[tuple[int, ...], ...]:
    """Decode a flat canonical index into the partition of range(n)."""
    total = partition_count(n)
    if not 0 <= flat_index < total:
        raise ValueError(f"partition index {flat_index} out of range for n={n}")
    sizes = partition_level_sizes(n)
    digits = []
    for size in reversed(sizes):
        flat_index, digit = divmod(flat_index, size)
        digits.append(digit)
    digits.reverse()

    rest = tuple(range(n))
    groups = []
    for digit in digits:
        trio = subset_unrank(digit, len(rest) - 1, 3)
        chosen = (0,) + tuple(t + 1 for t in trio)
        groups.append(tuple(rest[i] for i in chosen))
        rest = tuple(rest[i] for i in range(len(rest)) if i not in chosen)
    groups.append(rest)
    return tuple(groups)
