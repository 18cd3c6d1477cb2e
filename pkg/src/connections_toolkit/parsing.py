"""Parsing model replies into guesses.

A reply may contain reasoning, candidate groups, and a final answer; answer
lines look like

    GROUP NAME: [WORD, WORD, WORD, WORD]
    GROUP 1 NAME: WORD, WORD, WORD, WORD

with brackets optional and whitespace flexible. The last matching line wins
(chain-of-thought replies reason first and answer last). Parse failures are
ordinary values for the game loop's invalid path, raised here as
GuessParseError so call sites cannot ignore them.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ConnectionsError
from .game import canonical_word

_ANSWER_LINE = re.compile(
    r"""^\s*
        (?P<name>[^:\[\]]{1,120}?)          # group name, no colon or brackets
        \s*:\s*
        \[?\s*
        (?P<words>[^:\[\]]*,[^:\[\]]*?)     # comma-separated words
        \s*\]?
        [\s.!]*$""",
    re.VERBOSE,
)


class ParseReason(enum.Enum):
    NO_MATCH = "no_match"
    WRONG_ARITY = "wrong_arity"
    UNKNOWN_WORD = "unknown_word"
    DUPLICATE_WORD = "duplicate_word"
    NOT_FOUR_GROUPS = "not_four_groups"
    NOT_A_PARTITION = "not_a_partition"


class GuessParseError(ConnectionsError):
    def __init__(self, reason: ParseReason, message: str, token: str | None = None):
        super().__init__(message)
        self.reason = reason
        self.token = token


@dataclass(frozen=True)
class ParsedGuess:
    group_name: str
    words: tuple[str, ...]  # canonical


@dataclass(frozen=True)
class ParsedPartition:
    groups: tuple[ParsedGuess, ...]


def _strip_token(token: str) -> str:
    token = token.strip()
    token = token.strip("'\"")
    return token.strip()


def answer_lines(reply: str) -> list[tuple[str, list[str]]]:
    """Every (group name, raw tokens) pair the answer grammar matches."""
    found = []
    for line in reply.splitlines():
        match = _ANSWER_LINE.match(line)
        if not match:
            continue
        tokens = [_strip_token(t) for t in match.group("words").split(",")]
        tokens = [t for t in tokens if t]
        if len(tokens) < 2:
            continue
        found.append((match.group("name").strip(), tokens))
    return found


def _canonical_group(
    name: str, tokens: list[str], allowed: frozenset[str] | set[str]
) -> ParsedGuess:
    if len(tokens) != 4:
        raise GuessParseError(
            ParseReason.WRONG_ARITY,
            f"answer line {name!r} has {len(tokens)} words, need 4",
        )
    canon = [canonical_word(t) for t in tokens]
    for raw, word in zip(tokens, canon):
        if word not in allowed:
            raise GuessParseError(
                ParseReason.UNKNOWN_WORD,
                f"{raw!r} is not one of the available words",
                token=word,
            )
    if len(set(canon)) != 4:
        raise GuessParseError(
            ParseReason.DUPLICATE_WORD, f"answer line {name!r} repeats a word"
        )
    return ParsedGuess(group_name=name, words=tuple(canon))


def parse_single_guess(reply: str, allowed: Iterable[str]) -> ParsedGuess:
    """Extract the final four-word answer from a reply. `allowed` is the set
    of words the game can currently accept."""
    allowed = frozenset(allowed)
    matches = answer_lines(reply)
    if not matches:
        raise GuessParseError(ParseReason.NO_MATCH, "no answer line found")
    name, tokens = matches[-1]
    return _canonical_group(name, tokens, allowed)


def parse_partition_guess(reply: str, allowed: Iterable[str]) -> ParsedPartition:
    """Extract a full four-group partition (the last four answer lines)."""
    allowed = frozenset(allowed)
    matches = answer_lines(reply)
    if not matches:
        raise GuessParseError(ParseReason.NO_MATCH, "no answer lines found")
    if len(matches) < 4:
        raise GuessParseError(
            ParseReason.NOT_FOUR_GROUPS,
            f"found {len(matches)} group lines, need 4",
        )
    groups = tuple(
        _canonical_group(name, tokens, allowed) for name, tokens in matches[-4:]
    )
    seen: set[str] = set()
    for group in groups:
        for word in group.words:
            if word in seen:
                raise GuessParseError(
                    ParseReason.NOT_A_PARTITION,
                    f"{word!r} appears in more than one group",
                    token=word,
                )
            seen.add(word)
    if seen != allowed:
        raise GuessParseError(
            ParseReason.NOT_A_PARTITION,
            "groups do not cover the available words exactly",
        )
    return ParsedPartition(groups=groups)


def format_answer_line(name: str, words: Sequence[str], bracketed: bool = True) -> str:
    """The inverse of parsing: render a guess in the answer format."""
    joined = ", ".join(words)
    return f"{name}: [{joined}]" if bracketed else f"{name}: {joined}"
