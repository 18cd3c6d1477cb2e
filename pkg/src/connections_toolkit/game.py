"""Core rules of the Connections word game.

Implements both variants: the iterative game (guess one group of four at a
time, with correct / nearly-correct / incorrect feedback) and the all-in-one
challenge (submit a full partition of the sixteen words, all-or-nothing
feedback). Invalid submissions never consume guess budget and never change
the board.
"""

from __future__ import annotations

import datetime
import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import GameRuleError, PuzzleError

PUZZLE_WORD_COUNT = 16
GROUP_SIZE = 4


def canonical_word(text: str) -> str:
    """Canonical form of a puzzle word: trimmed, uppercased, inner runs of
    whitespace collapsed to single spaces. Idempotent."""
    if not isinstance(text, str):
        raise PuzzleError(f"word must be a string, got {type(text).__name__}")
    canon = " ".join(text.split()).upper()
    if not canon:
        raise PuzzleError(f"word {text!r} is empty after canonicalization")
    return canon


class Color(enum.IntEnum):
    """Category difficulty tier; yellow is easiest, purple hardest."""

    YELLOW = 0
    GREEN = 1
    BLUE = 2
    PURPLE = 3

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def from_label(cls, label: str) -> "Color":
        try:
            return cls[label.strip().upper()]
        except KeyError:
            raise PuzzleError(f"unknown color {label!r}") from None


class Variant(enum.Enum):
    ITERATIVE = "iterative"
    ALL_IN_ONE = "all_in_one"


class WordOrder(enum.Enum):
    SHUFFLED = "shuffled"
    GROUPED = "grouped"


@dataclass(frozen=True)
class Category:
    """A named group of exactly four words. `words` keeps file order (the
    presentation order for grouped games); membership tests use `word_set`."""

    name: str
    color: Color
    words: tuple[str, ...]

    def __post_init__(self):
        canon = tuple(canonical_word(w) for w in self.words)
        object.__setattr__(self, "words", canon)
        if len(canon) != GROUP_SIZE or len(set(canon)) != GROUP_SIZE:
            raise PuzzleError(
                f"category {self.name!r} must have {GROUP_SIZE} distinct words, "
                f"got {list(self.words)}"
            )

    @cached_property
    def word_set(self) -> frozenset[str]:
        return frozenset(self.words)


@dataclass(frozen=True)
class Puzzle:
    """Sixteen distinct words split into one category per color."""

    id: str
    categories: tuple[Category, ...]
    date: datetime.date | None = None

    def __post_init__(self):
        object.__setattr__(self, "categories", tuple(self.categories))
        if not self.id:
            raise PuzzleError("puzzle id must be non-empty")
        colors = [c.color for c in self.categories]
        if sorted(colors) != list(Color):
            raise PuzzleError(
                f"puzzle {self.id!r} must have exactly one category per color, "
                f"got {[c.label for c in colors]}"
            )
        words = [w for c in self.categories for w in c.words]
        if len(set(words)) != PUZZLE_WORD_COUNT:
            raise PuzzleError(
                f"puzzle {self.id!r} must contain {PUZZLE_WORD_COUNT} distinct "
                f"words, got {len(set(words))}"
            )

    @cached_property
    def all_words(self) -> frozenset[str]:
        return frozenset(w for c in self.categories for w in c.words)

    def category_of(self, color: Color) -> Category:
        for cat in self.categories:
            if cat.color is color:
                return cat
        raise PuzzleError(f"puzzle {self.id!r} has no {color.label} category")

    def grouped_words(self) -> list[str]:
        """All sixteen words, yellow category first, then green, blue, purple."""
        out: list[str] = []
        for color in Color:
            out.extend(self.category_of(color).words)
        return out


@dataclass(frozen=True)
class GameConfig:
    variant: Variant = Variant.ITERATIVE
    max_incorrect: int = 4
    word_order: WordOrder = WordOrder.SHUFFLED
    seed: int = 0

    def __post_init__(self):
        if self.max_incorrect < 1:
            raise GameRuleError("max_incorrect must be at least 1")


class FeedbackKind(enum.Enum):
    CORRECT = "correct"
    NEARLY_CORRECT = "nearly_correct"
    INCORRECT = "incorrect"
    ALL_CORRECT = "all_correct"
    NOT_ALL_CORRECT = "not_all_correct"
    INVALID = "invalid"


class InvalidReason(enum.Enum):
    NOT_FOUR_WORDS = "not_four_words"
    UNKNOWN_WORD = "unknown_word"
    WORD_ALREADY_SOLVED = "word_already_solved"
    DUPLICATE_GUESS = "duplicate_guess"
    MALFORMED_PARTITION = "malformed_partition"


@dataclass(frozen=True)
class Feedback:
    """Result of one submission. `category` is set only for CORRECT,
    `reason` only for INVALID."""

    kind: FeedbackKind
    category: Category | None = None
    reason: InvalidReason | None = None
    detail: str = ""

    @property
    def is_invalid(self) -> bool:
        return self.kind is FeedbackKind.INVALID

    @property
    def counts_as_incorrect(self) -> bool:
        return self.kind in (
            FeedbackKind.NEARLY_CORRECT,
            FeedbackKind.INCORRECT,
            FeedbackKind.NOT_ALL_CORRECT,
        )


class Status(enum.Enum):
    IN_PROGRESS = "in_progress"
    WON = "won"
    LOST = "lost"


_MASK64 = (1 << 64) - 1


class _SplitMix64:
    """Tiny deterministic RNG so shuffles replay identically everywhere."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)


def seeded_shuffle(items: Sequence, seed: int) -> list:
    """Fisher-Yates shuffle driven by a seeded SplitMix64 stream."""
    out = list(items)
    rng = _SplitMix64(seed)
    for i in range(len(out) - 1, 0, -1):
        j = rng.next() % (i + 1)
        out[i], out[j] = out[j], out[i]
    return out


# A submission as recorded in history: a tuple of raw word tokens for the
# iterative game, or a tuple of such tuples for the challenge variant.
Submission = tuple


class GameState:
    """One game in progress. Mutated only by `submit_guess` /
    `submit_partition`; every submission (including invalid ones) is appended
    to `history`, so replaying history against a fresh game reproduces the
    final state exactly."""

    def __init__(self, puzzle: Puzzle, config: GameConfig):
        self.puzzle = puzzle
        self.config = config
        if config.word_order is WordOrder.GROUPED:
            self.presented_order = puzzle.grouped_words()
        else:
            self.presented_order = seeded_shuffle(puzzle.grouped_words(), config.seed)
        self.remaining: set[str] = set(puzzle.all_words)
        self.solved: list[Category] = []
        self.incorrect_count = 0
        self.history: list[tuple[Submission, Feedback]] = []
        self.status = Status.IN_PROGRESS
        self._guessed_sets: set[frozenset] = set()

    # -- views ---------------------------------------------------------

    @property
    def remaining_in_order(self) -> list[str]:
        return [w for w in self.presented_order if w in self.remaining]

    @property
    def guesses_left(self) -> int:
        return self.config.max_incorrect - self.incorrect_count

    def __eq__(self, other) -> bool:
        if not isinstance(other, GameState):
            return NotImplemented
        return (
            self.puzzle == other.puzzle
            and self.config == other.config
            and self.presented_order == other.presented_order
            and self.remaining == other.remaining
            and self.solved == other.solved
            and self.incorrect_count == other.incorrect_count
            and self.history == other.history
            and self.status == other.status
        )

    # -- submissions ----------------------------------------------------

    def submit_guess(self, words: Iterable[str]) -> Feedback:
        """Play one four-word guess in the iterative game.

        Invalid guesses (wrong arity, unknown word, already-solved word,
        exact repeat of an earlier valid guess) get INVALID feedback and
        leave the board, budget, and status untouched.
        """
        self._require_in_progress(Variant.ITERATIVE)
        raw = tuple(str(w) for w in words)
        feedback = self._judge_guess(raw)
        self.history.append((raw, feedback))
        return feedback

    def _judge_guess(self, raw: tuple[str, ...]) -> Feedback:
        try:
            canon = [canonical_word(w) for w in raw]
        except PuzzleError:
            return Feedback(
                kind=FeedbackKind.INVALID,
                reason=InvalidReason.UNKNOWN_WORD,
                detail="unusable word token",
            )
        if len(canon) != GROUP_SIZE or len(set(canon)) != GROUP_SIZE:
            return Feedback(
                kind=FeedbackKind.INVALID,
                reason=InvalidReason.NOT_FOUR_WORDS,
                detail=f"need {GROUP_SIZE} distinct words, got {len(set(canon))}",
            )
        for w in canon:
            if w not in self.puzzle.all_words:
                return Feedback(
                    kind=FeedbackKind.INVALID,
                    reason=InvalidReason.UNKNOWN_WORD,
                    detail=w,
                )
        for w in canon:
            if w not in self.remaining:
                return Feedback(
                    kind=FeedbackKind.INVALID,
                    reason=InvalidReason.WORD_ALREADY_SOLVED,
                    detail=w,
                )
        guess_set = frozenset(canon)
        if guess_set in self._guessed_sets:
            return Feedback(
                kind=FeedbackKind.INVALID, reason=InvalidReason.DUPLICATE_GUESS
            )

        self._guessed_sets.add(guess_set)
        unsolved = [c for c in self.puzzle.categories if c not in self.solved]
        overlaps = [(len(guess_set & c.word_set), c) for c in unsolved]
        # Disjoint categories of size 4 mean at most one can hold >= 3 of the
        # 4 guessed words.
        assert sum(1 for m, _ in overlaps if m >= 3) <= 1
        best, best_cat = max(overlaps, key=lambda mc: mc[0])
        if best == GROUP_SIZE:
            self.remaining -= best_cat.word_set
            self.solved.append(best_cat)
            if len(self.solved) == len(self.puzzle.categories):
                self.status = Status.WON
            return Feedback(kind=FeedbackKind.CORRECT, category=best_cat)
        if best == GROUP_SIZE - 1:
            feedback = Feedback(kind=FeedbackKind.NEARLY_CORRECT)
        else:
            feedback = Feedback(kind=FeedbackKind.INCORRECT)
        self.incorrect_count += 1
        if self.incorrect_count >= self.config.max_incorrect:
            self.status = Status.LOST
        return feedback

    def submit_partition(self, groups: Sequence[Iterable[str]]) -> Feedback:
        """Play a full four-group partition in the challenge variant.

        The only substantive feedback is all-or-nothing; a malformed
        partition (wrong shape, duplicates, not covering the sixteen words)
        is INVALID and costs nothing.
        """
        self._require_in_progress(Variant.ALL_IN_ONE)
        raw = tuple(tuple(str(w) for w in g) for g in groups)
        feedback = self._judge_partition(raw)
        self.history.append((raw, feedback))
        return feedback

    def _judge_partition(self, raw: tuple[tuple[str, ...], ...]) -> Feedback:
        malformed = Feedback(
            kind=FeedbackKind.INVALID, reason=InvalidReason.MALFORMED_PARTITION
        )
        if len(raw) != len(self.puzzle.categories):
            return malformed
        canon_groups: list[frozenset[str]] = []
        total = 0
        for g in raw:
            try:
                canon = [canonical_word(w) for w in g]
            except PuzzleError:
                return malformed
            if len(canon) != GROUP_SIZE or len(set(canon)) != GROUP_SIZE:
                return malformed
            canon_groups.append(frozenset(canon))
            total += len(canon)
        union = frozenset().union(*canon_groups)
        if len(union) != total or union != self.puzzle.all_words:
            return malformed
        partition_key = frozenset(canon_groups)
        if partition_key in self._guessed_sets:
            return Feedback(
                kind=FeedbackKind.INVALID, reason=InvalidReason.DUPLICATE_GUESS
            )

        self._guessed_sets.add(partition_key)
        category_sets = {c.word_set for c in self.puzzle.categories}
        if set(canon_groups) == category_sets:
            self.solved = [self.puzzle.category_of(color) for color in Color]
            self.remaining.clear()
            self.status = Status.WON
            return Feedback(kind=FeedbackKind.ALL_CORRECT)
        self.incorrect_count += 1
        if self.incorrect_count >= self.config.max_incorrect:
            self.status = Status.LOST
        return Feedback(kind=FeedbackKind.NOT_ALL_CORRECT)

    def forced_final_guess(self) -> tuple[str, ...]:
        """The only legal guess once four words remain."""
        if len(self.remaining) != GROUP_SIZE:
            raise GameRuleError(
                f"forced_final_guess needs exactly {GROUP_SIZE} remaining words, "
                f"have {len(self.remaining)}"
            )
        return tuple(self.remaining_in_order)

    def _require_in_progress(self, variant: Variant) -> None:
        if self.status is not Status.IN_PROGRESS:
            raise GameRuleError(f"game is already {self.status.value}")
        if self.config.variant is not variant:
            raise GameRuleError(
                f"submission kind requires the {variant.value} variant, "
                f"game is {self.config.variant.value}"
            )


def new_game(puzzle: Puzzle, config: GameConfig | None = None) -> GameState:
    return GameState(puzzle, config or GameConfig())


def replay_game(
    puzzle: Puzzle, config: GameConfig, submissions: Iterable[Submission]
) -> GameState:
    """Re-run recorded submissions against a fresh game (event sourcing)."""
    state = new_game(puzzle, config)
    for sub in submissions:
        if sub and isinstance(sub[0], tuple):
            state.submit_partition(sub)
        else:
            state.submit_guess(sub)
    return state
