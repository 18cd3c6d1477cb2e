#!/usr/bin/env python3
"""Regenerate the committed test fixtures.

Writes golden prompt renderings and recorded chat sessions under
tests/fixtures/. Sessions are produced by running scripted players through
the capture path, so they are exactly what a live capture would contain.
Run from the repository root after any intentional template change:

    python3 tools/make_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

from connections_toolkit.dataset import find_puzzle, load_fixtures
from connections_toolkit.game import Color, GameConfig, Variant, WordOrder, new_game
from connections_toolkit.llm_solver import SolverParams, play, play_replication
from connections_toolkit.prompts import PromptKind, render_prompt
from connections_toolkit.transcripts import save_transcripts
from connections_toolkit.transport import CaptureTransport, ScriptedTransport

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "tests" / "fixtures"

ITERATIVE = GameConfig(
    variant=Variant.ITERATIVE, max_incorrect=5, word_order=WordOrder.SHUFFLED, seed=0
)
GROUPED_ITERATIVE = GameConfig(
    variant=Variant.ITERATIVE, max_incorrect=5, word_order=WordOrder.GROUPED
)
CHALLENGE = GameConfig(
    variant=Variant.ALL_IN_ONE, max_incorrect=5, word_order=WordOrder.SHUFFLED, seed=0
)
PARAMS = SolverParams()


def write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    print(f"wrote {path.relative_to(ROOT)}")


def answer(cat) -> str:
    return f"{cat.name}: [{', '.join(cat.words)}]"


def partition_answer(groups) -> str:
    return "\n".join(
        f"GROUP {i + 1} NAME: {', '.join(g)}" for i, g in enumerate(groups)
    )


def make_prompt_goldens(puzzles) -> None:
    puzzle = find_puzzle(puzzles, "fixture-001")
    out = FIXTURES / "prompts"

    state = new_game(puzzle, GROUPED_ITERATIVE)
    write(out / "initial_iterative.txt", render_prompt(PromptKind.INITIAL, state))
    write(
        out / "initial_iterative_cot.txt",
        render_prompt(PromptKind.INITIAL, state, chain_of_thought=True),
    )
    write(
        out / "nearly_correct_feedback.txt",
        render_prompt(PromptKind.NEARLY_CORRECT, state),
    )
    write(out / "incorrect_feedback.txt", render_prompt(PromptKind.INCORRECT, state))
    write(out / "invalid_feedback.txt", render_prompt(PromptKind.INVALID, state))

    fish = puzzle.category_of(Color.YELLOW)
    state.submit_guess(fish.words)
    write(
        out / "correct_feedback.txt",
        render_prompt(PromptKind.CORRECT, state, category=fish),
    )

    challenge = new_game(
        puzzle, GameConfig(variant=Variant.ALL_IN_ONE, word_order=WordOrder.GROUPED)
    )
    write(out / "initial_all_in_one.txt", render_prompt(PromptKind.INITIAL, challenge))
    write(
        out / "incorrect_all_in_one.txt",
        render_prompt(PromptKind.INCORRECT, challenge),
    )
    write(out / "invalid_all_in_one.txt", render_prompt(PromptKind.INVALID, challenge))
    write(
        out / "replication_grouped.txt",
        render_prompt(PromptKind.REPLICATION, challenge),
    )


def scripted_replies(puzzle) -> list[str]:
    """One scripted behavior per fixture puzzle, covering the interesting
    paths: clean wins, chain-of-thought style rambling, nearly-correct and
    duplicate recoveries, a loss, and an invalid-guess abort."""
    state = new_game(puzzle, ITERATIVE)
    cats = {c.color: c for c in puzzle.categories}
    yellow, green = cats[Color.YELLOW], cats[Color.GREEN]
    blue, purple = cats[Color.BLUE], cats[Color.PURPLE]
    if puzzle.id == "fixture-001":
        return [answer(c) for c in (yellow, green, blue, purple)]
    if puzzle.id == "fixture-002":
        rambling = (
            "Let me think about these words.\n"
            f"One candidate is {yellow.name}: [{', '.join(yellow.words)}]\n"
            "But actually I am more confident in another group.\n"
            f"{green.name}: [{', '.join(green.words)}]"
        )
        near_miss = f"{blue.name}: [{', '.join(blue.words[:3])}, {purple.words[0]}]"
        return [
            rambling,
            near_miss,
            answer(blue),
            answer(yellow),
            answer(purple),
        ]
    if puzzle.id == "fixture-003":
        wrong = [
            [yellow.words[0], green.words[0], blue.words[0], purple.words[0]],
            [yellow.words[1], green.words[1], blue.words[1], purple.words[1]],
            [yellow.words[2], green.words[2], blue.words[2], purple.words[2]],
            [yellow.words[3], green.words[3], blue.words[3], purple.words[3]],
            [yellow.words[0], green.words[1], blue.words[2], purple.words[3]],
        ]
        return [f"MIXED BAG: [{', '.join(w)}]" for w in wrong]
    if puzzle.id == "fixture-004":
        return [
            answer(purple),
            "I refuse to answer in the requested format.",
            answer(blue),
            answer(green),
            answer(yellow),
        ]
    if puzzle.id == "fixture-005":
        return ["no answer here"] * 5
    if puzzle.id == "fixture-006":
        duplicate = answer(yellow)
        return [
            duplicate,
            duplicate,  # exact repeat: engine-invalid, costs no budget
            answer(green),
            answer(blue),
            answer(purple),
        ]
    raise ValueError(f"no script for {puzzle.id}")


def make_sessions(puzzles) -> None:
    out = FIXTURES / "sessions"
    out.mkdir(parents=True, exist_ok=True)
    transcripts = []
    for puzzle in puzzles:
        capture = CaptureTransport(ScriptedTransport(scripted_replies(puzzle)))
        transcript = play(puzzle, ITERATIVE, PARAMS, capture)
        capture.save(out / f"{puzzle.id}__0.json")
        print(f"session {puzzle.id}: {transcript.outcome}")
        transcripts.append(transcript)
    save_transcripts(FIXTURES / "expected_transcripts.json", transcripts)
    print("wrote tests/fixtures/expected_transcripts.json")


def make_replication_sessions(puzzles) -> None:
    grouped_dir = FIXTURES / "replication_grouped"
    shuffled_dir = FIXTURES / "replication_shuffled"
    for directory in (grouped_dir, shuffled_dir):
        directory.mkdir(parents=True, exist_ok=True)
    for puzzle in puzzles:
        # the scripted player chunks the presented words four at a time:
        # right when the presentation is grouped, wrong when shuffled
        for order, directory in (
            (WordOrder.GROUPED, grouped_dir),
            (WordOrder.SHUFFLED, shuffled_dir),
        ):
            state = new_game(
                puzzle,
                GameConfig(variant=Variant.ALL_IN_ONE, max_incorrect=1, word_order=order),
            )
            presented = state.presented_order
            chunks = [presented[i : i + 4] for i in range(0, 16, 4)]
            reply = partition_answer(chunks)
            capture = CaptureTransport(ScriptedTransport([reply]))
            transcript = play_replication(puzzle, capture, order, seed=0, params=PARAMS)
            capture.save(directory / f"{puzzle.id}__0.json")
            print(f"replication {puzzle.id} {order.value}: {transcript.outcome}")


def make_challenge_session(puzzles) -> None:
    puzzle = find_puzzle(puzzles, "fixture-001")
    truth = [c.words for c in puzzle.categories]
    wrong = [list(g) for g in truth]
    wrong[0][0], wrong[1][0] = wrong[1][0], wrong[0][0]
    replies = [partition_answer(wrong), partition_answer(truth)]
    capture = CaptureTransport(ScriptedTransport(replies))
    transcript = play(puzzle, CHALLENGE, PARAMS, capture)
    capture.save(FIXTURES / "sessions_challenge" / f"{puzzle.id}__0.json")
    print(f"challenge session {puzzle.id}: {transcript.outcome}")


def main() -> None:
    puzzles = load_fixtures()
    make_prompt_goldens(puzzles)
    make_sessions(puzzles)
    make_replication_sessions(puzzles)
    (FIXTURES / "sessions_challenge").mkdir(parents=True, exist_ok=True)
    make_challenge_session(puzzles)


if __name__ == "__main__":
    main()
