"""LLM player: conversation management, invalid-guess protocol, transports.

The loop renders a prompt, sends the conversation, parses the reply into a
guess, and plays it. Replies the parser rejects and guesses the game refuses
both follow the same invalid path: an invalid-guess prompt is issued and the
session is abandoned as unsolved once the invalid budget is spent. Transport
failures are retried inside the transport; if it still fails, the session is
labeled distinctly from a puzzle loss.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TransportError
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
from .parsing import GuessParseError, parse_partition_guess, parse_single_guess
from .prompts import PromptKind, render_prompt
from .transcripts import Outcome, Transcript, TranscriptEvent, transcript_from_game
from .transport import ChatMessage, ChatTransport


@dataclass(frozen=True)
class SolverParams:
    """Knobs for one LLM player session."""

    model_name: str = "gpt-3.5-turbo-1106"
    temperature: float = 0.0
    sampling_seed: int = 0
    max_invalid: int = 5
    chain_of_thought: bool = False
    word_list_style: str = "comma"
    use_system_role: bool = False  # send the initial prompt as a system message

    def __post_init__(self):
        if self.max_invalid < 1:
            raise ValueError("max_invalid must be at least 1")


_FEEDBACK_PROMPTS = {
    FeedbackKind.CORRECT: PromptKind.CORRECT,
    FeedbackKind.NEARLY_CORRECT: PromptKind.NEARLY_CORRECT,
    FeedbackKind.INCORRECT: PromptKind.INCORRECT,
    FeedbackKind.NOT_ALL_CORRECT: PromptKind.INCORRECT,
}


class _Session:
    """Mutable conversation state for one play() call."""

    def __init__(self, state: GameState, params: SolverParams, transport: ChatTransport):
        self.state = state
        self.params = params
        self.transport = transport
        self.messages: list[ChatMessage] = []
        self.events: list[TranscriptEvent] = []
        self.invalid_count = 0

    def add_prompt(self, kind: PromptKind, category=None) -> None:
        text = render_prompt(
            kind,
            self.state,
            chain_of_thought=self.params.chain_of_thought,
            word_list_style=self.params.word_list_style,
            category=category,
        )
        role = (
            "system"
            if kind is PromptKind.INITIAL and self.params.use_system_role
            else "user"
        )
        self.messages.append(ChatMessage(role=role, content=text))

    def request_reply(self) -> str:
        text = self.transport.send(self.messages, self.params)
        self.messages.append(ChatMessage(role="assistant", content=text))
        return text

    @property
    def last_reply_index(self) -> int:
        return len(self.messages) - 1

    def record(self, event: TranscriptEvent) -> None:
        self.events.append(event)

    def finish(self, solver_kind: str, outcome: str | None = None) -> Transcript:
        return transcript_from_game(
            self.state,
            solver={
                "kind": solver_kind,
                "model": self.params.model_name,
                "temperature": self.params.temperature,
                "chain_of_thought": self.params.chain_of_thought,
            },
            outcome=outcome,
            events=self.events,
            invalid_count=self.invalid_count,
            max_invalid=self.params.max_invalid,
            messages=[m.to_dict() for m in self.messages],
        )


def play(
    puzzle: Puzzle,
    config: GameConfig,
    params: SolverParams,
    transport: ChatTransport,
) -> Transcript:
    """Run one full LLM session against a puzzle (either variant)."""
    state = new_game(puzzle, config)
    session = _Session(state, params, transport)
    session.add_prompt(PromptKind.INITIAL)
    solver_kind = (
        "llm-iterative" if config.variant is Variant.ITERATIVE else "llm-challenge"
    )

    while state.status is Status.IN_PROGRESS:
        try:
            reply = session.request_reply()
        except TransportError:
            return session.finish(solver_kind, outcome=Outcome.TRANSPORT_FAILURE)

        feedback = _play_reply(session, reply)
        if feedback is None or feedback.is_invalid:
            session.invalid_count += 1
            session.add_prompt(PromptKind.INVALID)
            if session.invalid_count >= params.max_invalid:
                return session.finish(solver_kind, outcome=Outcome.ABORTED_INVALID)
            continue
        if state.status is not Status.IN_PROGRESS:
            break
        session.add_prompt(_FEEDBACK_PROMPTS[feedback.kind], category=feedback.category)
    return session.finish(solver_kind)


def _play_reply(session: _Session, reply: str) -> Feedback | None:
    """Parse one reply and play it; None means the reply never became a
    guess. Parsing accepts any puzzle word so that reuse of an already-solved
    word reaches the engine and is judged there."""
    state = session.state
    reply_index = session.last_reply_index
    try:
        if state.config.variant is Variant.ITERATIVE:
            parsed = parse_single_guess(reply, state.puzzle.all_words)
            feedback = state.submit_guess(parsed.words)
            submission = parsed.words
            action = "guess"
        else:
            parsed = parse_partition_guess(reply, state.puzzle.all_words)
            submission = tuple(g.words for g in parsed.groups)
            feedback = state.submit_partition(submission)
            action = "partition"
    except GuessParseError as exc:
        session.record(
            TranscriptEvent(
                action="parse_failure",
                parse_reason=exc.reason.value,
                reply_index=reply_index,
            )
        )
        return None
    session.record(
        TranscriptEvent.from_feedback(action, submission, feedback, reply_index)
    )
    return feedback


def play_replication(
    puzzle: Puzzle,
    transport: ChatTransport,
    word_order: WordOrder,
    seed: int = 0,
    params: SolverParams | None = None,
) -> Transcript:
    """Single-exchange all-in-one run with the prior-work prompt, for the
    word-ordering comparison: one reply, one partition, win or lose."""
    params = params or SolverParams()
    config = GameConfig(
        variant=Variant.ALL_IN_ONE,
        max_incorrect=1,
        word_order=word_order,
        seed=seed,
    )
    state = new_game(puzzle, config)
    session = _Session(state, params, transport)
    session.add_prompt(PromptKind.REPLICATION)
    try:
        reply = session.request_reply()
    except TransportError:
        return session.finish("llm-replication", outcome=Outcome.TRANSPORT_FAILURE)
    feedback = _play_reply(session, reply)
    if feedback is None or feedback.is_invalid:
        session.invalid_count += 1
        return session.finish("llm-replication", outcome=Outcome.ABORTED_INVALID)
    return session.finish("llm-replication")
