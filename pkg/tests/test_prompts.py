from pathlib import Path

import pytest

from connections_toolkit import prompts
from connections_toolkit.errors import PromptError
from connections_toolkit.game import (
    Color,
    GameConfig,
    Variant,
    WordOrder,
    new_game,
)
from connections_toolkit.prompts import (
    PromptKind,
    format_word_list,
    render_prompt,
    render_template,
)

GOLDEN_DIR = Path(__file__).parent / "fixtures" / "prompts"
GROUPED = GameConfig(
    variant=Variant.ITERATIVE, max_incorrect=5, word_order=WordOrder.GROUPED
)
GROUPED_CHALLENGE = GameConfig(variant=Variant.ALL_IN_ONE, word_order=WordOrder.GROUPED)


def golden(name: str) -> str:
    return (GOLDEN_DIR / name).read_text(encoding="utf-8")


@pytest.fixture()
def game(puzzle1):
    return new_game(puzzle1, GROUPED)


@pytest.fixture()
def challenge(puzzle1):
    return new_game(puzzle1, GROUPED_CHALLENGE)


def test_initial_prompt_golden(game):
    assert render_prompt(PromptKind.INITIAL, game) == golden("initial_iterative.txt")


def test_initial_prompt_cot_golden(game):
    rendered = render_prompt(PromptKind.INITIAL, game, chain_of_thought=True)
    assert rendered == golden("initial_iterative_cot.txt")
    assert "First, briefly summarize the rules" in rendered


def test_initial_prompt_lists_all_sixteen_words(game):
    rendered = render_prompt(PromptKind.INITIAL, game)
    tail = rendered.split("Here are the starting 16 words:\n")[1]
    assert tail.split(", ") == game.puzzle.grouped_words()


def test_correct_feedback_golden_preserves_template_spelling(game):
    fish = game.puzzle.category_of(Color.YELLOW)
    game.submit_guess(fish.words)
    rendered = render_prompt(PromptKind.CORRECT, game, category=fish)
    assert rendered == golden("correct_feedback.txt")
    assert "The category was FISH. Diffulty: yellow" in rendered


@pytest.mark.parametrize(
    "kind,name",
    [
        (PromptKind.NEARLY_CORRECT, "nearly_correct_feedback.txt"),
        (PromptKind.INCORRECT, "incorrect_feedback.txt"),
        (PromptKind.INVALID, "invalid_feedback.txt"),
    ],
)
def test_iterative_feedback_goldens(game, kind, name):
    assert render_prompt(kind, game) == golden(name)


@pytest.mark.parametrize(
    "kind,name",
    [
        (PromptKind.INITIAL, "initial_all_in_one.txt"),
        (PromptKind.INCORRECT, "incorrect_all_in_one.txt"),
        (PromptKind.INVALID, "invalid_all_in_one.txt"),
        (PromptKind.REPLICATION, "replication_grouped.txt"),
    ],
)
def test_all_in_one_goldens(challenge, kind, name):
    assert render_prompt(kind, challenge) == golden(name)


def test_templates_carry_source_idiosyncrasies():
    assert "the puzzled is solved" in prompts.INITIAL_ITERATIVE
    assert "Diffulty: {CATEGORY_COLOR}" in prompts.CORRECT_FEEDBACK
    assert prompts.INITIAL_ITERATIVE.count("the 4 words. \n") == 1
    assert "Continue to solve the puzzle. \n" in prompts.CORRECT_FEEDBACK
    assert "Below are my 16 words: \n" in prompts.REPLICATION_PROMPT
    assert "MAKE SURE YOU DON'T REPEAT ANY OF YOUR PREVIOUS GUESSES." in (
        prompts.INCORRECT_FEEDBACK
    )


def test_cot_insert_is_empty_when_disabled(game):
    rendered = render_prompt(PromptKind.INITIAL, game)
    assert "First, briefly summarize" not in rendered
    assert "Some rules:\n- Give your final answer" in rendered


def test_remaining_words_shrink_after_solving(game):
    fish = game.puzzle.category_of(Color.YELLOW)
    game.submit_guess(fish.words)
    rendered = render_prompt(PromptKind.INCORRECT, game)
    tail = rendered.split("Here are the remaining words:\n")[1]
    words = tail.split(", ")
    assert len(words) == 12
    assert not set(words) & fish.word_set


def test_unresolved_placeholder_is_an_error():
    with pytest.raises(PromptError):
        render_template("hello {MISSING}")


def test_correct_prompt_requires_category(game):
    with pytest.raises(PromptError):
        render_prompt(PromptKind.CORRECT, game)


def test_unsupported_kind_variant_combination(challenge):
    with pytest.raises(PromptError):
        render_prompt(PromptKind.NEARLY_CORRECT, challenge)


def test_word_list_styles():
    assert format_word_list(["A", "B"], "comma") == "A, B"
    assert format_word_list(["A", "B"], "lines") == "A\nB"
    with pytest.raises(PromptError):
        format_word_list(["A"], "fancy")
