"""Replayable record of one solver-vs-puzzle episode.

A transcript captures everything the evaluation statistics need: the
submissions in order with their feedback, the conversation for LLM runs, and
the final outcome. Re-running its submissions through the game engine must
reproduce the recorded final status; `resimulate` checks exactly that.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import ConnectionsError
from .game import (
    Feedback,
    FeedbackKind,
    GameConfig,
    GameState,
    Puzzle,
    Status,
    Variant,
    WordOrder,
    new_game,
)


class Outcome:
    """Final result of a solver session. WON/LOST mirror the game status;
    the other values label sessions that never reached a game ending."""

    WON = "won"
    LOST = "lost"
    ABORTED_INVALID = "aborted_invalid"
    TRANSPORT_FAILURE = "transport_failure"
    ERROR = "error"

    ALL = (WON, LOST, ABORTED_INVALID, TRANSPORT_FAILURE, ERROR)


@dataclass(frozen=True)
class TranscriptEvent:
    """One submission attempt (or unparseable reply) and what came of it."""

    action: str  # "guess" | "partition" | "parse_failure"
    words: tuple[str, ...] | None = None
    groups: tuple[tuple[str, ...], ...] | None = None
    feedback: str | None = None  # FeedbackKind value
    category_name: str | None = None
    category_color: str | None = None
    invalid_reason: str | None = None
    parse_reason: str | None = None
    reply_index: int | None = None  # index into Transcript.messages

    def to_dict(self) -> dict:
        out: dict = {"action": self.action}
        if self.words is not None:
            out["words"] = list(self.words)
        if self.groups is not None:
            out["groups"] = [list(g) for g in self.groups]
        for key in (
            "feedback",
            "category_name",
            "category_color",
            "invalid_reason",
            "parse_reason",
            "reply_index",
        ):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "TranscriptEvent":
        return cls(
            action=data["action"],
            words=tuple(data["words"]) if "words" in data else None,
            groups=tuple(tuple(g) for g in data["groups"]) if "groups" in data else None,
            feedback=data.get("feedback"),
            category_name=data.get("category_name"),
            category_color=data.get("category_color"),
            invalid_reason=data.get("invalid_reason"),
            parse_reason=data.get("parse_reason"),
            reply_index=data.get("reply_index"),
        )

    @classmethod
    def from_feedback(
        cls, action: str, submission, feedback: Feedback, reply_index: int | None = None
    ) -> "TranscriptEvent":
        return cls(
            action=action,
            words=submission if action == "guess" else None,
            groups=submission if action == "partition" else None,
            feedback=feedback.kind.value,
            category_name=feedback.category.name if feedback.category else None,
            category_color=feedback.category.color.label if feedback.category else None,
            invalid_reason=feedback.reason.value if feedback.reason else None,
            reply_index=reply_index,
        )


@dataclass
class Transcript:
    puzzle_id: str
    solver: dict
    variant: str
    word_order: str
    seed: int
    max_incorrect: int
    outcome: str
    final_status: str
    incorrect_count: int
    invalid_count: int
    solve_order: list[dict]  # [{"color": ..., "name": ...}] in solve order
    events: list[TranscriptEvent]
    max_invalid: int | None = None
    messages: list[dict] = field(default_factory=list)  # [{"role","content"}]
    error: str | None = None

    @property
    def won(self) -> bool:
        return self.outcome == Outcome.WON

    def solved_colors(self) -> set[str]:
        return {entry["color"] for entry in self.solve_order}

    def first_valid_feedback(self) -> str | None:
        """Feedback kind of the first submission the game accepted."""
        for event in self.events:
            if event.action == "parse_failure":
                continue
            if event.feedback == FeedbackKind.INVALID.value:
                continue
            return event.feedback
        return None

    def incorrect_guesses_before_color(self, color: str) -> int | None:
        """How many budget-consuming guesses preceded solving `color`;
        None when the color was never solved."""
        spent = 0
        for event in self.events:
            if event.feedback in (
                FeedbackKind.CORRECT.value,
                FeedbackKind.ALL_CORRECT.value,
            ):
                if event.feedback == FeedbackKind.ALL_CORRECT.value:
                    return spent
                if event.category_color == color:
                    return spent
            elif event.feedback in (
                FeedbackKind.NEARLY_CORRECT.value,
                FeedbackKind.INCORRECT.value,
                FeedbackKind.NOT_ALL_CORRECT.value,
            ):
                spent += 1
        return None

    def to_dict(self) -> dict:
        out = {
            "puzzle_id": self.puzzle_id,
            "solver": self.solver,
            "variant": self.variant,
            "word_order": self.word_order,
            "seed": self.seed,
            "max_incorrect": self.max_incorrect,
            "outcome": self.outcome,
            "final_status": self.final_status,
            "incorrect_count": self.incorrect_count,
            "invalid_count": self.invalid_count,
            "solve_order": self.solve_order,
            "events": [e.to_dict() for e in self.events],
        }
        if self.max_invalid is not None:
            out["max_invalid"] = self.max_invalid
        if self.messages:
            out["messages"] = self.messages
        if self.error is not None:
            out["error"] = self.error
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Transcript":
        return cls(
            puzzle_id=data["puzzle_id"],
            solver=data["solver"],
            variant=data["variant"],
            word_order=data["word_order"],
            seed=data["seed"],
            max_incorrect=data["max_incorrect"],
            outcome=data["outcome"],
            final_status=data["final_status"],
            incorrect_count=data["incorrect_count"],
            invalid_count=data["invalid_count"],
            solve_order=data["solve_order"],
            events=[TranscriptEvent.from_dict(e) for e in data["events"]],
            max_invalid=data.get("max_invalid"),
            messages=data.get("messages", []),
            error=data.get("error"),
        )


def transcript_from_game(
    state: GameState,
    solver: dict,
    outcome: str | None = None,
    events: list[TranscriptEvent] | None = None,
    invalid_count: int = 0,
    max_invalid: int | None = None,
    messages: list[dict] | None = None,
    error: str | None = None,
) -> Transcript:
    """Build a transcript from a finished (or aborted) game. When `events`
    is omitted they are derived from the engine history."""
    if events is None:
        events = []
        for submission, feedback in state.history:
            action = "partition" if submission and isinstance(submission[0], tuple) else "guess"
            events.append(TranscriptEvent.from_feedback(action, submission, feedback))
    if outcome is None:
        if state.status is Status.WON:
            outcome = Outcome.WON
        elif state.status is Status.LOST:
            outcome = Outcome.LOST
        else:
            raise ConnectionsError("unfinished game needs an explicit outcome")
    return Transcript(
        puzzle_id=state.puzzle.id,
        solver=solver,
        variant=state.config.variant.value,
        word_order=state.config.word_order.value,
        seed=state.config.seed,
        max_incorrect=state.config.max_incorrect,
        outcome=outcome,
        final_status=state.status.value,
        incorrect_count=state.incorrect_count,
        invalid_count=invalid_count,
        solve_order=[
            {"color": c.color.label, "name": c.name} for c in state.solved
        ],
        events=events,
        max_invalid=max_invalid,
        messages=list(messages or []),
        error=error,
    )


def resimulate(transcript: Transcript, puzzle: Puzzle) -> GameState:
    """Re-run the transcript's submissions through a fresh engine and verify
    the recorded final status still holds."""
    if puzzle.id != transcript.puzzle_id:
        raise ConnectionsError(
            f"transcript is for {transcript.puzzle_id!r}, not {puzzle.id!r}"
        )
    config = GameConfig(
        variant=Variant(transcript.variant),
        max_incorrect=transcript.max_incorrect,
        word_order=WordOrder(transcript.word_order),
        seed=transcript.seed,
    )
    state = new_game(puzzle, config)
    for event in transcript.events:
        if event.action == "guess":
            feedback = state.submit_guess(event.words)
        elif event.action == "partition":
            feedback = state.submit_partition(event.groups)
        else:
            continue
        if feedback.kind.value != event.feedback:
            raise ConnectionsError(
                f"re-simulation diverged: recorded {event.feedback}, "
                f"engine now says {feedback.kind.value}"
            )
    if state.status.value != transcript.final_status:
        raise ConnectionsError(
            f"re-simulation ended {state.status.value}, transcript says "
            f"{transcript.final_status}"
        )
    return state


def save_transcripts(path: Path | str, transcripts: Iterable[Transcript]) -> None:
    doc = {"version": 1, "transcripts": [t.to_dict() for t in transcripts]}
    Path(path).write_text(
        json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def load_transcripts(path: Path | str) -> list[Transcript]:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return [Transcript.from_dict(t) for t in doc["transcripts"]]
