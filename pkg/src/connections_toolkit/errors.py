"""Exception hierarchy shared across the toolkit."""


class ConnectionsError(Exception):
    """Base class for all toolkit errors."""


class PuzzleError(ConnectionsError):
    """A puzzle, category, or word violates a structural rule."""


class GameRuleError(ConnectionsError):
    """The game API was misused (wrong variant, finished game, bad precondition)."""


class DatasetError(ConnectionsError):
    """A puzzle file failed to parse or validate.

    `issues` holds the machine-readable issue list when available.
    """

    def __init__(self, message, issues=None):
        super().__init__(message)
        self.issues = list(issues or [])


class EmbeddingError(ConnectionsError):
    """An embedding table is malformed or does not cover the puzzle."""


class PromptError(ConnectionsError):
    """A prompt template could not be rendered."""


class TransportError(ConnectionsError):
    """The chat transport failed after exhausting retries."""


class ReplayMismatchError(TransportError):
    """A replayed request diverged from the recorded session."""


class StatsError(ConnectionsError):
    """A statistical test received degenerate or malformed samples."""
