import numpy as np
import pytest

from connections_toolkit.dataset import load_fixtures
from connections_toolkit.embeddings import EmbeddingTable, block_table


@pytest.fixture(scope="session")
def fixtures():
    return load_fixtures()


@pytest.fixture(scope="session")
def puzzle1(fixtures):
    return fixtures[0]


@pytest.fixture()
def block(puzzle1):
    return block_table(puzzle1)


def random_table(words, dim=8, seed=0, model_name="random-test"):
    """Random full-rank table; nonzero norms guaranteed by construction."""
    rng = np.random.default_rng(seed)
    vectors = {}
    for word in words:
        vec = rng.normal(size=dim)
        while float(vec @ vec) == 0.0:  # pragma: no cover - essentially never
            vec = rng.normal(size=dim)
        vectors[word] = vec
    return EmbeddingTable.from_mapping(model_name, dim, {w: list(v) for w, v in vectors.items()})


def merged_block_table(puzzles, within=0.9, cross=0.1):
    """One table covering several puzzles with disjoint word sets: each
    puzzle's block vectors live in their own dimension range."""
    tables = [block_table(p, within=within, cross=cross) for p in puzzles]
    dim = sum(t.dim for t in tables)
    vectors = {}
    offset = 0
    for t in tables:
        for word, vec in t.vectors.items():
            if word in vectors:
                raise ValueError(f"puzzles share the word {word!r}")
            padded = [0.0] * dim
            padded[offset : offset + t.dim] = list(vec)
            vectors[word] = padded
        offset += t.dim
    return EmbeddingTable.from_mapping("synthetic-block-merged", dim, vectors)


def boosted_table(puzzle, groups, boost=3.0, within=0.8, cross=0.05):
    """Block table plus a strong shared component per word group in `groups`
    (each on its own axis), making those mixed groups outscore pure
    categories."""
    groups = [set(g) for g in groups]
    base = block_table(puzzle, within=within, cross=cross)
    dim = base.dim + len(groups)
    vectors = {}
    for word, vec in base.vectors.items():
        extra = [boost if word in g else 0.0 for g in groups]
        vectors[word] = list(vec) + extra
    return EmbeddingTable.from_mapping("boosted-test", dim, vectors)
