"""Puzzle file schema: loading, saving, and validation.

A puzzle file is a single UTF-8 JSON document:

    {
      "version": 1,
      "puzzles": [
        {
          "id": "...",
          "date": "YYYY-MM-DD",        # optional
          "groups": [
            {"name": "...", "color": "yellow", "words": ["...", x4]},
            ... exactly four groups, one per color ...
          ]
        },
        ...
      ]
    }

Colors are explicit strings so a shuffled source file stays unambiguous.
`validate_file` collects every problem instead of stopping at the first;
`load_dataset` is the strict variant that raises on any issue.
"""

from __future__ import annotations

import datetime
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

from .errors import DatasetError, PuzzleError
from .game import Category, Color, Puzzle, canonical_word

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class DatasetIssue:
    """One machine-readable validation problem."""

    rule: str
    message: str
    puzzle_id: str | None = None
    record_index: int | None = None
    severity: str = "error"  # "error" | "warning"

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "message": self.message,
            "puzzle_id": self.puzzle_id,
            "record_index": self.record_index,
            "severity": self.severity,
        }


@dataclass(frozen=True)
class DatasetStats:
    puzzle_count: int
    distinct_word_count: int
    shared_word_count: int  # words appearing in more than one puzzle

    def to_dict(self) -> dict:
        return {
            "puzzle_count": self.puzzle_count,
            "distinct_word_count": self.distinct_word_count,
            "shared_word_count": self.shared_word_count,
        }


@dataclass
class ValidationReport:
    stats: DatasetStats | None
    issues: list[DatasetIssue] = field(default_factory=list)

    @property
    def errors(self) -> list[DatasetIssue]:
        return [i for i in self.issues if i.severity == "error"]

    @property
    def warnings(self) -> list[DatasetIssue]:
        return [i for i in self.issues if i.severity == "warning"]

    @property
    def ok(self) -> bool:
        return not self.errors


def _parse_record(index: int, record, issues: list[DatasetIssue]) -> Puzzle | None:
    def bad(rule: str, message: str, puzzle_id=None):
        issues.append(
            DatasetIssue(
                rule=rule, message=message, puzzle_id=puzzle_id, record_index=index
            )
        )

    if not isinstance(record, dict):
        bad("record-shape", f"puzzle record {index} is not an object")
        return None
    pid = record.get("id")
    if not isinstance(pid, str) or not pid:
        bad("id", f"puzzle record {index} needs a non-empty string id")
        return None

    date = None
    if record.get("date") is not None:
        try:
            date = datetime.date.fromisoformat(record["date"])
        except (TypeError, ValueError):
            bad("date", f"puzzle {pid!r}: date must be YYYY-MM-DD", pid)
            return None

    groups = record.get("groups")
    if not isinstance(groups, list) or len(groups) != 4:
        bad("groups", f"puzzle {pid!r}: needs exactly 4 groups", pid)
        return None

    categories = []
    for g in groups:
        if not isinstance(g, dict):
            bad("group-shape", f"puzzle {pid!r}: group is not an object", pid)
            return None
        words = g.get("words")
        if not isinstance(words, list) or not all(isinstance(w, str) for w in words):
            bad("words", f"puzzle {pid!r}: group words must be a list of strings", pid)
            return None
        try:
            categories.append(
                Category(
                    name=str(g.get("name", "")),
                    color=Color.from_label(str(g.get("color", ""))),
                    words=tuple(words),
                )
            )
        except PuzzleError as exc:
            bad("category", f"puzzle {pid!r}: {exc}", pid)
            return None
    try:
        return Puzzle(id=pid, categories=tuple(categories), date=date)
    except PuzzleError as exc:
        bad("puzzle", str(exc), pid)
        return None


def _parse_document(doc) -> tuple[list[Puzzle], list[DatasetIssue]]:
    issues: list[DatasetIssue] = []
    if not isinstance(doc, dict):
        issues.append(DatasetIssue("document", "top level must be a JSON object"))
        return [], issues
    if doc.get("version") != SCHEMA_VERSION:
        issues.append(
            DatasetIssue(
                "version",
                f"expected version {SCHEMA_VERSION}, got {doc.get('version')!r}",
            )
        )
        return [], issues
    records = doc.get("puzzles")
    if not isinstance(records, list):
        issues.append(DatasetIssue("puzzles", "'puzzles' must be a list"))
        return [], issues

    puzzles: list[Puzzle] = []
    seen_ids: dict[str, int] = {}
    for index, record in enumerate(records):
        puzzle = _parse_record(index, record, issues)
        if puzzle is None:
            continue
        if puzzle.id in seen_ids:
            issues.append(
                DatasetIssue(
                    "duplicate-id",
                    f"puzzle id {puzzle.id!r} already used by record "
                    f"{seen_ids[puzzle.id]}",
                    puzzle_id=puzzle.id,
                    record_index=index,
                )
            )
            continue
        seen_ids[puzzle.id] = index
        puzzles.append(puzzle)
    if not records:
        issues.append(
            DatasetIssue("empty", "file contains no puzzles", severity="warning")
        )
    return puzzles, issues


def _read_document(path: Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DatasetError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def compute_stats(puzzles: Iterable[Puzzle]) -> DatasetStats:
    puzzles = list(puzzles)
    counts: dict[str, int] = {}
    for p in puzzles:
        for w in p.all_words:
            counts[w] = counts.get(w, 0) + 1
    return DatasetStats(
        puzzle_count=len(puzzles),
        distinct_word_count=len(counts),
        shared_word_count=sum(1 for n in counts.values() if n > 1),
    )


def validate_file(path: Path | str) -> ValidationReport:
    """Validate a puzzle file, collecting the full issue list."""
    try:
        doc = _read_document(Path(path))
    except DatasetError as exc:
        return ValidationReport(stats=None, issues=[DatasetIssue("parse", str(exc))])
    puzzles, issues = _parse_document(doc)
    report = ValidationReport(stats=None, issues=issues)
    if report.ok:
        report.stats = compute_stats(puzzles)
    return report


def load_dataset(path: Path | str) -> list[Puzzle]:
    """Load and validate a puzzle file, raising on the first problem set."""
    doc = _read_document(Path(path))
    puzzles, issues = _parse_document(doc)
    errors = [i for i in issues if i.severity == "error"]
    if errors:
        summary = "; ".join(i.message for i in errors[:3])
        if len(errors) > 3:
            summary += f" (+{len(errors) - 3} more)"
        raise DatasetError(f"{path}: {summary}", issues=errors)
    return puzzles


def puzzle_to_record(puzzle: Puzzle) -> dict:
    record = {
        "id": puzzle.id,
        "groups": [
            {"name": c.name, "color": c.color.label, "words": list(c.words)}
            for c in puzzle.categories
        ],
    }
    if puzzle.date is not None:
        record["date"] = puzzle.date.isoformat()
    return record


def save_dataset(path: Path | str, puzzles: Iterable[Puzzle]) -> None:
    doc = {
        "version": SCHEMA_VERSION,
        "puzzles": [puzzle_to_record(p) for p in puzzles],
    }
    Path(path).write_text(
        json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def fixture_path() -> Path:
    """Path of the bundled six-puzzle fixture file."""
    return Path(resources.files("connections_toolkit") / "data" / "fixtures.json")


def load_fixtures() -> list[Puzzle]:
    return load_dataset(fixture_path())


def find_puzzle(puzzles: Iterable[Puzzle], puzzle_id: str) -> Puzzle:
    for p in puzzles:
        if p.id == puzzle_id:
            return p
    raise DatasetError(f"no puzzle with id {puzzle_id!r}")
