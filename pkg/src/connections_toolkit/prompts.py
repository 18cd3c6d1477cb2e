"""Prompt templates for the LLM player.

The template text is fixed verbatim (idiosyncratic spelling and trailing
whitespace included) because the golden-file tests pin every rendered byte.
Placeholders use {NAME} syntax; rendering must resolve all of them.
"""

from __future__ import annotations

import enum
from typing import Sequence

from .errors import PromptError
from .game import Category, GameState, Variant

INITIAL_ITERATIVE = (
    "I want you to solve a daily word puzzle that finds commonalities between words. There are 16 words, which form 4 groups of 4 words. Each group has some common theme that links the words. You must use each of the 16 words, and use each word only once.\n"
    "\n"
    "Each group of 4 words are linked together in some way. The connection between words can be simple. An example of a simple connection would be \"types of fish\": Bass, Flounder, Salmon, Trout. Categories can also be more complex, and require abstract or lateral thinking.\n"
    "An example of this type of connection would be \"things that start with FIRE\": Ant, Drill, Island, Opal.\n"
    "Provide the one group you are most sure of as your final answer. I will enter this into the puzzle and give you feedback: I will tell you whether it is correct, incorrect, or nearly correct (3/4 words).\n"
    "Then we will continue until the puzzled is solved, or you lose.\n"
    "\n"
    "Format your answer as:\n"
    "GROUP NAME: [WORD, WORD, WORD, WORD]\n"
    "\n"
    "Some rules:\n"
    "{CHAIN_OF_THOUGHT_PROMPT}- Give your final answer in the format described above. Do not add any additional text to your final answer, just the group name and the 4 words. \n"
    "\n"
    "Here are the starting 16 words:\n"
    "{PUZZLE_WORDS}"
)

CHAIN_OF_THOUGHT_INSERT = (
    "- First, briefly summarize the rules and objective of the puzzle (in no more than 50 words)\n"
    "- Next, come up with a category to which four of the words belong and briefly explain why you think they belong to that category:\n"
)

CORRECT_FEEDBACK = (
    "The response from the game was: Correct! The category was {CATEGORY_NAME}. Diffulty: {CATEGORY_COLOR}\n"
    "\n"
    "Continue to solve the puzzle. \n"
    "Format your answer as:\n"
    "GROUP NAME: [WORD, WORD, WORD, WORD]\n"
    "\n"
    "Here are the remaining words:\n"
    "{PUZZLE_WORDS}"
)

NEARLY_CORRECT_FEEDBACK = (
    "The response from the game was: Nearly Correct. Three of your words are in a group, but one is not in the same group.\n"
    "\n"
    "Continue to solve the puzzle. Again, provide one group you are most certain of. MAKE SURE YOU DON'T REPEAT ANY OF YOUR PREVIOUS GUESSES.\n"
    "Format your answer as:\n"
    "GROUP NAME: [WORD, WORD, WORD, WORD]\n"
    "\n"
    "Here are the remaining words:\n"
    "{PUZZLE_WORDS}"
)

INCORRECT_FEEDBACK = (
    "The response from the game was: Incorrect guess.\n"
    "\n"
    "Let's continue to solve the puzzle. MAKE SURE YOU DON'T REPEAT ANY OF YOUR PREVIOUS GUESSES.\n"
    "Format your answer as:\n"
    "GROUP NAME: [WORD, WORD, WORD, WORD]\n"
    "\n"
    "Here are the remaining words:\n"
    "{PUZZLE_WORDS}"
)

INVALID_FEEDBACK = (
    "The response from the game was: Invalid guess. Please try again.\n"
    "\n"
    "Your answer wasn't formatted correctly. Try again, and follow the formatting instructions carefully.\n"
    "Format your answer as:\n"
    "GROUP NAME: [WORD, WORD, WORD, WORD]\n"
    "\n"
    "Here are the remaining words:\n"
    "{PUZZLE_WORDS}"
)

INITIAL_ALL_IN_ONE = (
    "I want you to solve a daily word puzzle that finds commonalities between words. There are 16 words, which form 4 groups of 4 words. Each group has some common theme that links the words. You must use each of the 16 words, and use each word only once. Each group of 4 words are linked together in some way. The connection between words can be simple. An example of a simple connection would be \"types of fish\": Bass, Flounder, Salmon, Trout. Categories can also be more complex, and require abstract or lateral thinking.\n"
    "An example of this type of connection would be \"things that start with FIRE\": Ant, Drill, Island, Opal.\n"
    "\n"
    "Format your final answers as:\n"
    "GROUP 1 NAME: WORD, WORD, WORD, WORD\n"
    "GROUP 2 NAME: WORD, WORD, WORD, WORD\n"
    "GROUP 3 NAME: WORD, WORD, WORD, WORD\n"
    "GROUP 4 NAME: WORD, WORD, WORD, WORD\n"
    "\n"
    "Replace each GROUP NAME with a name for the group you create.\n"
    "\n"
    "Some rules:\n"
    "- Give your final answers in the format described above. Put each group on a separate line. Do not add any additional text to your final answer, just the group name and the 4 words. \n"
    "\n"
    "Here are the starting 16 words:\n"
    "{PUZZLE_WORDS}"
)

INCORRECT_ALL_IN_ONE = (
    "The response from the game was: Incorrect guess.\n"
    "\n"
    "Let's continue to solve the puzzle. MAKE SURE YOU DON'T REPEAT ANY OF YOUR PREVIOUS GUESSES.\n"
    "\n"
    "Format your final answers as:\n"
    "GROUP 1 NAME: WORD, WORD, WORD, WORD\n"
    "GROUP 2 NAME: WORD, WORD, WORD, WORD\n"
    "GROUP 3 NAME: WORD, WORD, WORD, WORD\n"
    "GROUP 4 NAME: WORD, WORD, WORD, WORD\n"
    "\n"
    "The remaining words are:\n"
    "{PUZZLE_WORDS}"
)

INVALID_ALL_IN_ONE = (
    "The response from the game was: Invalid guess. Please try again.\n"
    "\n"
    "Your answer wasn't formatted correctly. Try again, and follow the formatting instructions carefully.\n"
    "\n"
    "Format your final answers as:\n"
    "GROUP 1 NAME: WORD, WORD, WORD, WORD\n"
    "GROUP 2 NAME: WORD, WORD, WORD, WORD\n"
    "GROUP 3 NAME: WORD, WORD, WORD, WORD\n"
    "GROUP 4 NAME: WORD, WORD, WORD, WORD\n"
    "\n"
    "The remaining words are:\n"
    "{PUZZLE_WORDS}"
)

REPLICATION_PROMPT = (
    "Find 4 groups, each of 4 words that share something in common, out of 16 words. I want to use them to solve a daily word puzzle that finds commonalities between words. The game is a new puzzle featured in The New York Times, inspired by crosswords. You have to use all those 16 words I give you and each word only once.\n"
    "Format your final answers as:\n"
    "GROUP 1 NAME: [WORD, WORD, WORD, WORD]\n"
    "GROUP 2 NAME: [WORD, WORD, WORD, WORD]\n"
    "GROUP 3 NAME: [WORD, WORD, WORD, WORD]\n"
    "GROUP 4 NAME: [WORD, WORD, WORD, WORD]\n"
    "\n"
    "Below are my 16 words: \n"
    "{PUZZLE_WORDS}"
)


class PromptKind(enum.Enum):
    INITIAL = "initial"
    CORRECT = "correct"
    NEARLY_CORRECT = "nearly_correct"
    INCORRECT = "incorrect"
    INVALID = "invalid"
    REPLICATION = "replication"


_TEMPLATES = {
    (PromptKind.INITIAL, Variant.ITERATIVE): INITIAL_ITERATIVE,
    (PromptKind.CORRECT, Variant.ITERATIVE): CORRECT_FEEDBACK,
    (PromptKind.NEARLY_CORRECT, Variant.ITERATIVE): NEARLY_CORRECT_FEEDBACK,
    (PromptKind.INCORRECT, Variant.ITERATIVE): INCORRECT_FEEDBACK,
    (PromptKind.INVALID, Variant.ITERATIVE): INVALID_FEEDBACK,
    (PromptKind.INITIAL, Variant.ALL_IN_ONE): INITIAL_ALL_IN_ONE,
    (PromptKind.INCORRECT, Variant.ALL_IN_ONE): INCORRECT_ALL_IN_ONE,
    (PromptKind.INVALID, Variant.ALL_IN_ONE): INVALID_ALL_IN_ONE,
    (PromptKind.REPLICATION, Variant.ALL_IN_ONE): REPLICATION_PROMPT,
}


def format_word_list(words: Sequence[str], style: str = "comma") -> str:
    if style == "comma":
        return ", ".join(words)
    if style == "lines":
        return "\n".join(words)
    raise PromptError(f"unknown word list style {style!r}")


def render_template(template: str, **values: str) -> str:
    """Substitute {NAME} placeholders; any placeholder left without a value
    is an error rather than leaking braces into the conversation."""
    try:
        return template.format(**values)
    except KeyError as exc:
        raise PromptError(f"unresolved placeholder {{{exc.args[0]}}}") from None
    except (IndexError, ValueError) as exc:
        raise PromptError(f"malformed template: {exc}") from None


def render_prompt(
    kind: PromptKind,
    state: GameState,
    *,
    chain_of_thought: bool = False,
    word_list_style: str = "comma",
    category: Category | None = None,
) -> str:
    """Render the prompt for the current game state. {PUZZLE_WORDS} is the
    remaining words in presentation order; the correct-guess prompt also
    needs the category that was just solved."""
    template = _TEMPLATES.get((kind, state.config.variant))
    if template is None:
        raise PromptError(
            f"no {kind.value} prompt for the {state.config.variant.value} variant"
        )
    values = {
        "PUZZLE_WORDS": format_word_list(state.remaining_in_order, word_list_style)
    }
    if kind is PromptKind.INITIAL and state.config.variant is Variant.ITERATIVE:
        values["CHAIN_OF_THOUGHT_PROMPT"] = (
            CHAIN_OF_THOUGHT_INSERT if chain_of_thought else ""
        )
    if kind is PromptKind.CORRECT:
        if category is None:
            raise PromptError("the correct-guess prompt needs the solved category")
        values["CATEGORY_NAME"] = category.name
        values["CATEGORY_COLOR"] = category.color.label
    return render_template(template, **values)
