import random

import pytest

from connections_toolkit.parsing import (
    GuessParseError,
    ParseReason,
    format_answer_line,
    parse_partition_guess,
    parse_single_guess,
)

WORDS = (
    "DOG CAT FOX OWL BAT ELK HEN RAM COD EEL JAY SOW APE BEE COW DOE".split()
)
ALLOWED = frozenset(WORDS)
ALLOWED_WITH_PHRASE = frozenset(list(ALLOWED - {"DOE"}) + ["NEW YORK"])

G1 = "DOG, CAT, FOX, OWL"
FULL_PARTITION = (
    "PETS: [DOG, CAT, FOX, OWL]\n"
    "FLYERS: [BAT, HEN, JAY, BEE]\n"
    "FARM: [ELK, RAM, SOW, COW]\n"
    "OTHERS: [COD, EEL, APE, DOE]"
)

# (label, reply, expected words or ParseReason)
SINGLE_CASES = [
    ("well-formed brackets", f"ANIMALS: [{G1}]", ("DOG", "CAT", "FOX", "OWL")),
    ("bracketless", f"ANIMALS: {G1}", ("DOG", "CAT", "FOX", "OWL")),
    ("lowercase", "animals: [dog, cat, fox, owl]", ("DOG", "CAT", "FOX", "OWL")),
    (
        "flexible whitespace",
        "ANIMALS :  [ DOG ,CAT,   FOX ,OWL ]",
        ("DOG", "CAT", "FOX", "OWL"),
    ),
    (
        "cot multi-candidate keeps last",
        "First I summarize the rules.\n"
        "A tempting group is BIRDS: [OWL, HEN, JAY, BEE]\n"
        "But I am more confident in my final answer.\n"
        "MAMMALS: [DOG, CAT, FOX, RAM]",
        ("DOG", "CAT", "FOX", "RAM"),
    ),
    ("trailing period", f"ANIMALS: [{G1}].", ("DOG", "CAT", "FOX", "OWL")),
    (
        "prose before the answer",
        f"Sure! Here is my guess for this round.\nANIMALS: [{G1}]",
        ("DOG", "CAT", "FOX", "OWL"),
    ),
    ("quoted words", 'ANIMALS: ["DOG", "CAT", "FOX", "OWL"]', ("DOG", "CAT", "FOX", "OWL")),
    ("numbered name", f"GROUP 1 NAME: {G1}", ("DOG", "CAT", "FOX", "OWL")),
    ("crlf endings", f"thinking...\r\nANIMALS: [{G1}]\r\n", ("DOG", "CAT", "FOX", "OWL")),
    ("markdown name", f"**ANIMALS**: {G1}", ("DOG", "CAT", "FOX", "OWL")),
    ("extra commas", "ANIMALS: [DOG,, CAT, FOX,, OWL]", ("DOG", "CAT", "FOX", "OWL")),
    ("three words", "GROUP: [DOG, CAT, FOX]", ParseReason.WRONG_ARITY),
    ("five words", "GROUP: [DOG, CAT, FOX, OWL, BAT]", ParseReason.WRONG_ARITY),
    ("unknown word", "GROUP: [DOG, CAT, FOX, UNICORN]", ParseReason.UNKNOWN_WORD),
    ("repeated word", "GROUP: [DOG, CAT, FOX, DOG]", ParseReason.DUPLICATE_WORD),
    ("no answer line", "I cannot find any groups today.", ParseReason.NO_MATCH),
    ("empty reply", "", ParseReason.NO_MATCH),
    ("colon but no list", "Answer: impossible", ParseReason.NO_MATCH),
    (
        "late arity slip wins as last match",
        f"ANIMALS: [{G1}]\nP.S: also, maybe",
        ParseReason.WRONG_ARITY,
    ),
]

PARTITION_CASES = [
    ("four bracketed lines", FULL_PARTITION, "ok"),
    ("bracketless lines", FULL_PARTITION.replace("[", "").replace("]", ""), "ok"),
    (
        "reasoning then five lines keeps last four",
        "My first idea was WRONG: [DOG, CAT, FOX, BEE]\n" + FULL_PARTITION,
        "partial",  # last four answer lines are the real partition
    ),
    (
        "three lines",
        "\n".join(FULL_PARTITION.splitlines()[:3]),
        ParseReason.NOT_FOUR_GROUPS,
    ),
    ("no lines", "no idea", ParseReason.NO_MATCH),
    (
        "shared word across groups",
        FULL_PARTITION.replace("COD, EEL, APE, DOE", "COD, EEL, APE, DOG"),
        ParseReason.NOT_A_PARTITION,
    ),
    (
        "incomplete cover",
        FULL_PARTITION.replace("FARM: [ELK, RAM, SOW, COW]", "FARM: [ELK, RAM, SOW, SOW]"),
        ParseReason.DUPLICATE_WORD,
    ),
    (
        "unknown word in one group",
        FULL_PARTITION.replace("DOE", "DRAGON"),
        ParseReason.UNKNOWN_WORD,
    ),
    (
        "wrong arity in one group",
        FULL_PARTITION.replace("COD, EEL, APE, DOE", "COD, EEL, APE"),
        ParseReason.WRONG_ARITY,
    ),
    (
        "missing one word entirely",
        FULL_PARTITION.replace("OTHERS: [COD, EEL, APE, DOE]", "OTHERS: [COD, EEL, APE, HEN]"),
        ParseReason.NOT_A_PARTITION,
    ),
]


@pytest.mark.parametrize(
    "reply,expected", [(c[1], c[2]) for c in SINGLE_CASES], ids=[c[0] for c in SINGLE_CASES]
)
def test_single_guess_corpus(reply, expected):
    if isinstance(expected, ParseReason):
        with pytest.raises(GuessParseError) as err:
            parse_single_guess(reply, ALLOWED)
        assert err.value.reason is expected
    else:
        assert parse_single_guess(reply, ALLOWED).words == expected


@pytest.mark.parametrize(
    "reply,expected",
    [(c[1], c[2]) for c in PARTITION_CASES],
    ids=[c[0] for c in PARTITION_CASES],
)
def test_partition_corpus(reply, expected):
    if isinstance(expected, ParseReason):
        with pytest.raises(GuessParseError) as err:
            parse_partition_guess(reply, ALLOWED)
        assert err.value.reason is expected
    else:
        parsed = parse_partition_guess(reply, ALLOWED)
        assert len(parsed.groups) == 4
        covered = {w for g in parsed.groups for w in g.words}
        assert covered == ALLOWED


def test_corpus_is_large_enough():
    assert len(SINGLE_CASES) + len(PARTITION_CASES) >= 30


def test_unknown_word_reports_the_token():
    with pytest.raises(GuessParseError) as err:
        parse_single_guess("G: [DOG, CAT, FOX, UNICORN]", ALLOWED)
    assert err.value.token == "UNICORN"


def test_multiword_puzzle_words_parse():
    parsed = parse_single_guess(
        "PLACES: [NEW YORK, DOG, CAT, FOX]", ALLOWED_WITH_PHRASE
    )
    assert "NEW YORK" in parsed.words


def test_parse_format_roundtrip_identity():
    rng = random.Random(5)
    for trial in range(50):
        words = tuple(rng.sample(WORDS, 4))
        for bracketed in (True, False):
            line = format_answer_line(f"GUESS {trial}", words, bracketed=bracketed)
            parsed = parse_single_guess(line, ALLOWED)
            assert parsed.words == words


def test_partition_parse_format_roundtrip():
    rng = random.Random(11)
    for _ in range(20):
        shuffled = WORDS[:]
        rng.shuffle(shuffled)
        groups = [shuffled[i : i + 4] for i in range(0, 16, 4)]
        reply = "\n".join(
            format_answer_line(f"GROUP {i + 1}", g) for i, g in enumerate(groups)
        )
        parsed = parse_partition_guess(reply, ALLOWED)
        assert [list(g.words) for g in parsed.groups] == groups
