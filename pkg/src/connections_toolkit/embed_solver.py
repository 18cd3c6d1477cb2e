"""Sentence-embedding baseline solver.

Iterative play: enumerate every four-word group over the remaining words,
rank by mean pairwise cosine similarity (ties broken by lexicographic member
indices), and submit down the list; after a correct guess, re-rank over the
smaller word set. Challenge play scores all 2,627,625 four-group partitions
by summed group score and submits them best-first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .combinatorics import enumerate_groups, partition_at
from .embeddings import EmbeddingTable, SimilarityMatrix, similarity_matrix
from .game import FeedbackKind, GameConfig, Puzzle, Status, Variant, new_game
from .transcripts import Transcript, transcript_from_game


@dataclass(frozen=True)
class ScoredGroup:
    indices: tuple[int, int, int, int]  # ascending, into the ranked word list
    score: float


@dataclass(frozen=True)
class ScoredPartition:
    groups: tuple[tuple[int, ...], ...]  # canonical order over 16 indices
    score: float


def score_group(indices: Sequence[int], sim: np.ndarray) -> float:
    """Mean of the six pairwise similarities among four word indices."""
    total = 0.0
    for a in range(4):
        for b in range(a + 1, 4):
            total += sim[indices[a], indices[b]]
    return total / 6.0


def score_partition(groups: Sequence[Sequence[int]], sim: np.ndarray) -> float:
    return sum(score_group(g, sim) for g in groups)


def rank_groups_from_matrix(sim: np.ndarray) -> list[ScoredGroup]:
    """Every 4-subset of the matrix's words, best mean similarity first;
    equal scores keep lexicographic enumeration order."""
    groups = enumerate_groups(sim.shape[0])
    scores = kernels.all_group_scores(sim)
    order = np.argsort(-scores, kind="stable")
    return [ScoredGroup(indices=groups[i], score=float(scores[i])) for i in order]


def rank_groups(words: Sequence[str], table: EmbeddingTable) -> list[ScoredGroup]:
    matrix = similarity_matrix(words, table)
    return rank_groups_from_matrix(matrix.values)


def greedy_iterative_sequence(
    words: Sequence[str],
    sim_for_words: Callable[[Sequence[str]], np.ndarray],
    submit: Callable[[tuple[str, ...]], FeedbackKind],
    game_over: Callable[[], bool],
) -> list[tuple[str, ...]]:
    """The iterative solver's guess loop, shared by the full game driver and
    reduced test harnesses. Submits ranked groups until a correct guess, then
    re-ranks over whatever `words` the callbacks now expose, skipping any
    group already tried. Returns the guesses in submission order."""
    guessed: set[frozenset[str]] = set()
    sequence: list[tuple[str, ...]] = []
    current = list(words)
    while not game_over():
        progressed = False
        ranked = rank_groups_from_matrix(sim_for_words(current))
        for scored in ranked:
            group = tuple(current[i] for i in scored.indices)
            key = frozenset(group)
            if key in guessed:
                continue
            guessed.add(key)
            sequence.append(group)
            feedback = submit(group)
            if feedback is FeedbackKind.CORRECT:
                progressed = True
                break
            if game_over():
                return sequence
        if progressed:
            current = [w for w in current if w not in sequence[-1]]
        elif not game_over():
            # Every group over these words has been tried; nothing left to do.
            break
    return sequence


def solve_iterative(
    puzzle: Puzzle, table: EmbeddingTable, config: GameConfig | None = None
) -> Transcript:
    """Play the iterative game greedily by ranked cosine similarity."""
    config = config or GameConfig()
    if config.variant is not Variant.ITERATIVE:
        raise ValueError("solve_iterative needs an iterative game config")
    table.require_words(puzzle.all_words)
    state = new_game(puzzle, config)

    def sim_for_words(words: Sequence[str]) -> np.ndarray:
        return similarity_matrix(words, table).values

    def submit(group: tuple[str, ...]) -> FeedbackKind:
        return state.submit_guess(group).kind

    greedy_iterative_sequence(
        state.remaining_in_order,
        sim_for_words,
        submit,
        lambda: state.status is not Status.IN_PROGRESS,
    )
    return transcript_from_game(state, solver=_solver_info("embed-iterative", table))


def rank_partitions_for_words(
    words: Sequence[str], table: EmbeddingTable
) -> tuple[np.ndarray, np.ndarray, SimilarityMatrix]:
    """Rank all canonical partitions of 16 words. Returns (order, scores,
    matrix); order[i] is the flat index of the i-th best partition."""
    matrix = similarity_matrix(words, table)
    group_scores = kernels.all_group_scores(matrix.values)
    order, scores = kernels.rank_partitions(group_scores)
    return order, scores, matrix


def solve_challenge(
    puzzle: Puzzle, table: EmbeddingTable, config: GameConfig | None = None
) -> Transcript:
    """Play the all-in-one challenge: submit whole partitions best-first."""
    config = config or GameConfig(variant=Variant.ALL_IN_ONE)
    if config.variant is not Variant.ALL_IN_ONE:
        raise ValueError("solve_challenge needs an all-in-one game config")
    table.require_words(puzzle.all_words)
    state = new_game(puzzle, config)
    words = state.remaining_in_order
    order, _, _ = rank_partitions_for_words(words, table)

    for flat_index in order:
        groups = partition_at(16, int(flat_index))
        submission = tuple(tuple(words[i] for i in g) for g in groups)
        feedback = state.submit_partition(submission)
        assert not feedback.is_invalid
        if state.status is not Status.IN_PROGRESS:
            break
    return transcript_from_game(state, solver=_solver_info("embed-challenge", table))


def _solver_info(kind: str, table: EmbeddingTable) -> dict:
    return {"kind": kind, "model": table.model_name, "dim": table.dim}
