"""Toolkit for playing, solving, and evaluating Connections word puzzles."""

__version__ = "0.1.0"

from .game import (
    Category,
    Color,
    Feedback,
    FeedbackKind,
    GameConfig,
    GameState,
    InvalidReason,
    Puzzle,
    Status,
    Variant,
    WordOrder,
    canonical_word,
    new_game,
)

__all__ = [
    "__version__",
    "Category",
    "Color",
    "Feedback",
    "FeedbackKind",
    "GameConfig",
    "GameState",
    "InvalidReason",
    "Puzzle",
    "Status",
    "Variant",
    "WordOrder",
    "canonical_word",
    "new_game",
]


def load_fixtures():
    """Bundled six-puzzle fixture dataset (convenience re-export)."""
    from .dataset import load_fixtures as _load

    return _load()
