"""Word embedding tables and cosine similarity structure.

The on-disk format (shared with the exporter) is UTF-8 JSON:

    {"model": "...", "dim": D, "vectors": {"WORD": [D floats], ...}}

Words are canonical (uppercase, trimmed); all components must be finite and
no vector may have zero norm. Zero norms are rejected at load time so
scoring never has to special-case them.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import EmbeddingError
from .game import Puzzle, canonical_word


def cosine(u: Sequence[float], v: Sequence[float]) -> float:
    """Cosine similarity, clamped to [-1, 1] against floating-point drift.
    Zero-norm input is an error, never a silent zero."""
    a = np.asarray(u, dtype=np.float64)
    b = np.asarray(v, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise EmbeddingError(f"dimension mismatch: {a.shape} vs {b.shape}")
    na = math.sqrt(float(a @ a))
    nb = math.sqrt(float(b @ b))
    if na == 0.0 or nb == 0.0:
        raise EmbeddingError("cosine is undefined for a zero-norm vector")
    return min(1.0, max(-1.0, float(a @ b) / (na * nb)))


@dataclass
class EmbeddingTable:
    """In-memory vector table keyed by canonical word."""

    model_name: str
    dim: int
    vectors: dict[str, np.ndarray]

    @classmethod
    def from_mapping(
        cls, model_name: str, dim: int, vectors: Mapping[str, Sequence[float]]
    ) -> "EmbeddingTable":
        if dim <= 0:
            raise EmbeddingError(f"dim must be positive, got {dim}")
        table: dict[str, np.ndarray] = {}
        for word, values in vectors.items():
            canon = canonical_word(word)
            if canon in table:
                raise EmbeddingError(f"duplicate word after canonicalization: {canon!r}")
            vec = np.asarray(values, dtype=np.float64)
            if vec.shape != (dim,):
                raise EmbeddingError(
                    f"vector for {canon!r} has length {vec.shape}, expected ({dim},)"
                )
            if not np.all(np.isfinite(vec)):
                raise EmbeddingError(f"vector for {canon!r} has non-finite components")
            if float(vec @ vec) == 0.0:
                raise EmbeddingError(f"vector for {canon!r} has zero norm")
            table[canon] = vec
        return cls(model_name=model_name, dim=dim, vectors=table)

    @classmethod
    def load(cls, path: Path | str) -> "EmbeddingTable":
        try:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise EmbeddingError(f"cannot read {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise EmbeddingError(f"{path}: invalid JSON: {exc}") from exc
        for key in ("model", "dim", "vectors"):
            if key not in doc:
                raise EmbeddingError(f"{path}: missing {key!r} field")
        return cls.from_mapping(str(doc["model"]), int(doc["dim"]), doc["vectors"])

    def save(self, path: Path | str) -> None:
        doc = {
            "model": self.model_name,
            "dim": self.dim,
            "vectors": {w: [float(x) for x in v] for w, v in sorted(self.vectors.items())},
        }
        Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")

    def missing_words(self, words: Iterable[str]) -> list[str]:
        return [w for w in words if w not in self.vectors]

    def require_words(self, words: Iterable[str]) -> None:
        missing = self.missing_words(words)
        if missing:
            raise EmbeddingError(
                f"embedding table {self.model_name!r} is missing: {', '.join(missing)}"
            )


@dataclass(frozen=True)
class SimilarityMatrix:
    """Pairwise cosine similarities over an ordered word list."""

    words: tuple[str, ...]
    values: np.ndarray  # (n, n) float64, symmetric, unit diagonal

    def index_of(self, word: str) -> int:
        return self.words.index(word)


def similarity_matrix(words: Sequence[str], table: EmbeddingTable) -> SimilarityMatrix:
    """Cosine similarity matrix over `words` in the given order. Exactly
    symmetric, unit diagonal, entries clamped to [-1, 1]."""
    table.require_words(words)
    mat = np.stack([table.vectors[w] for w in words])
    norms = np.linalg.norm(mat, axis=1, keepdims=True)
    unit = mat / norms
    sims = unit @ unit.T
    sims = (sims + sims.T) / 2.0
    np.clip(sims, -1.0, 1.0, out=sims)
    np.fill_diagonal(sims, 1.0)
    return SimilarityMatrix(words=tuple(words), values=sims)


def block_table(
    puzzle: Puzzle,
    within: float = 0.9,
    cross: float = 0.1,
    model_name: str = "synthetic-block",
) -> EmbeddingTable:
    """Synthetic table whose cosines are exactly `within` inside a category
    and `cross` across categories. Built from orthogonal category / word /
    shared components with weights chosen so every vector has unit norm."""
    if not 0.0 <= cross < within <= 1.0:
        raise EmbeddingError(f"need 0 <= cross < within <= 1, got {cross}, {within}")
    n_cats = len(puzzle.categories)
    words = [w for c in puzzle.categories for w in c.words]
    dim = 1 + n_cats + len(words)
    shared = math.sqrt(cross)
    cat_weight = math.sqrt(within - cross)
    word_weight = math.sqrt(1.0 - within)
    vectors: dict[str, list[float]] = {}
    for ci, cat in enumerate(puzzle.categories):
        for wi, word in enumerate(cat.words):
            vec = [0.0] * dim
            vec[0] = shared
            vec[1 + ci] = cat_weight
            vec[1 + n_cats + ci * 4 + wi] = word_weight
            vectors[word] = vec
    return EmbeddingTable.from_mapping(model_name, dim, vectors)
