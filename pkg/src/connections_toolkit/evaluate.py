"""Batch evaluation: run a solver over a dataset and aggregate the results.

Success is measured two ways, matching how results are reported: puzzle
success (the game was won) and per-color category success (the category was
solved before the session ended, which still counts in lost games). Reports
carry explicit numerators and denominators for every rate, and writing the
same inputs twice produces byte-identical files.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .dataset import load_dataset
from .embeddings import EmbeddingTable
from .embed_solver import solve_challenge, solve_iterative
from .errors import ConnectionsError, StatsError
from .game import Color, FeedbackKind, GameConfig, Puzzle, Variant, WordOrder
from .llm_solver import SolverParams, play
from .stats import TTestResult, paired_t, welch_t
from .transcripts import Outcome, Transcript, save_transcripts
from .transport import ChatTransport, HttpTransport, ReplayTransport

COLOR_ORDER = [c.label for c in Color]


@dataclass
class RunConfig:
    dataset: str
    solver: dict
    seeds: list[int] = field(default_factory=lambda: [0])
    variant: Variant = Variant.ITERATIVE
    max_incorrect: int = 5
    max_invalid: int = 5
    word_order: WordOrder = WordOrder.SHUFFLED
    sweep_budget: int | None = None
    max_workers: int = 4

    def __post_init__(self):
        if not self.seeds:
            raise ConnectionsError("need at least one seed")
        if self.max_incorrect < 1 or (self.sweep_budget or 1) < 1:
            raise ConnectionsError("budgets must be at least 1")

    @property
    def budget(self) -> int:
        return self.sweep_budget or self.max_incorrect

    def game_config(self, seed: int) -> GameConfig:
        return GameConfig(
            variant=self.variant,
            max_incorrect=self.budget,
            word_order=self.word_order,
            seed=seed,
        )

    def to_dict(self) -> dict:
        return {
            "dataset": str(self.dataset),
            "solver": self.solver,
            "seeds": self.seeds,
            "variant": self.variant.value,
            "max_incorrect": self.max_incorrect,
            "max_invalid": self.max_invalid,
            "word_order": self.word_order.value,
            "sweep_budget": self.sweep_budget,
            "toolkit_version": __version__,
        }


TransportFactory = Callable[[Puzzle, int], ChatTransport]


def transport_factory_from_spec(spec: dict) -> TransportFactory:
    kind = spec.get("kind")
    if kind == "replay":
        fixtures_dir = Path(spec["fixtures_dir"])

        def replay_factory(puzzle: Puzzle, seed: int) -> ChatTransport:
            return ReplayTransport(fixtures_dir / f"{puzzle.id}__{seed}.json")

        return replay_factory
    if kind == "http":
        transport = HttpTransport(
            base_url=spec.get("base_url", "https://api.openai.com/v1"),
            api_key_env=spec.get("api_key_env", "OPENAI_API_KEY"),
        )
        return lambda puzzle, seed: transport
    raise ConnectionsError(f"unknown transport spec {spec!r}")


def _run_one(
    config: RunConfig,
    puzzle: Puzzle,
    seed: int,
    table: EmbeddingTable | None,
    transport_factory: TransportFactory | None,
) -> Transcript:
    game_config = config.game_config(seed)
    solver_kind = config.solver.get("kind")
    try:
        if solver_kind == "embed":
            assert table is not None
            if config.variant is Variant.ITERATIVE:
                return solve_iterative(puzzle, table, game_config)
            return solve_challenge(puzzle, table, game_config)
        if solver_kind == "llm":
            assert transport_factory is not None
            params = SolverParams(
                model_name=config.solver.get("model", "gpt-3.5-turbo-1106"),
                temperature=config.solver.get("temperature", 0.0),
                sampling_seed=seed,
                max_invalid=config.max_invalid,
                chain_of_thought=config.solver.get("chain_of_thought", False),
            )
            return play(puzzle, game_config, params, transport_factory(puzzle, seed))
        raise ConnectionsError(f"unknown solver kind {solver_kind!r}")
    except ConnectionsError as exc:
        return Transcript(
            puzzle_id=puzzle.id,
            solver=config.solver,
            variant=config.variant.value,
            word_order=config.word_order.value,
            seed=seed,
            max_incorrect=config.budget,
            outcome=Outcome.ERROR,
            final_status="in_progress",
            incorrect_count=0,
            invalid_count=0,
            solve_order=[],
            events=[],
            error=str(exc),
        )


def run_eval(
    config: RunConfig,
    puzzles: Sequence[Puzzle] | None = None,
    transport_factory: TransportFactory | None = None,
) -> list[Transcript]:
    """One transcript per (puzzle, seed). The deterministic embedding solver
    runs once per puzzle (seeds only reshuffle presentation); LLM runs repeat
    per seed. A failing puzzle becomes an error transcript, never a crash."""
    if puzzles is None:
        puzzles = load_dataset(config.dataset)
    solver_kind = config.solver.get("kind")
    table = None
    if solver_kind == "embed":
        table = EmbeddingTable.load(config.solver["embeddings"])
        seeds = config.seeds[:1]
    else:
        seeds = config.seeds
        if transport_factory is None:
            transport_factory = transport_factory_from_spec(
                config.solver.get("transport", {})
            )
    jobs = [(puzzle, seed) for puzzle in puzzles for seed in seeds]
    if config.max_workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=config.max_workers) as pool:
            futures = [
                pool.submit(_run_one, config, puzzle, seed, table, transport_factory)
                for puzzle, seed in jobs
            ]
            return [f.result() for f in futures]
    return [
        _run_one(config, puzzle, seed, table, transport_factory)
        for puzzle, seed in jobs
    ]


# ---------------------------------------------------------------------------
# aggregation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rate:
    successes: int
    total: int

    @property
    def value(self) -> float:
        return self.successes / self.total if self.total else 0.0

    def to_dict(self) -> dict:
        return {"successes": self.successes, "total": self.total, "rate": self.value}


_FIRST_GUESS_CLASSES = {
    FeedbackKind.CORRECT.value: "correct",
    FeedbackKind.ALL_CORRECT.value: "correct",
    FeedbackKind.NEARLY_CORRECT.value: "nearly_correct",
    FeedbackKind.INCORRECT.value: "incorrect",
    FeedbackKind.NOT_ALL_CORRECT.value: "incorrect",
}


@dataclass
class AggregateReport:
    overall: Rate
    per_color: dict[str, Rate]
    first_guess: dict[str, Rate]
    first_guess_excluded: int

    def to_dict(self) -> dict:
        return {
            "overall": self.overall.to_dict(),
            "per_color": {c: r.to_dict() for c, r in self.per_color.items()},
            "first_guess": {k: r.to_dict() for k, r in self.first_guess.items()},
            "first_guess_excluded": self.first_guess_excluded,
        }


def aggregate(transcripts: Sequence[Transcript]) -> AggregateReport:
    """Success rates over transcripts: overall, per color, and conditioned on
    the class of the first valid guess. Sessions that never produced a valid
    guess are excluded from the conditioning with an explicit count."""
    if not transcripts:
        raise ConnectionsError("cannot aggregate an empty transcript list")
    total = len(transcripts)
    overall = Rate(sum(1 for t in transcripts if t.won), total)
    per_color = {
        color: Rate(
            sum(1 for t in transcripts if color in t.solved_colors()), total
        )
        for color in COLOR_ORDER
    }
    buckets: dict[str, list[bool]] = {
        "correct": [],
        "nearly_correct": [],
        "incorrect": [],
    }
    excluded = 0
    for t in transcripts:
        first = t.first_valid_feedback()
        klass = _FIRST_GUESS_CLASSES.get(first or "")
        if klass is None:
            excluded += 1
            continue
        buckets[klass].append(t.won)
    first_guess = {
        klass: Rate(sum(wins), len(wins)) for klass, wins in buckets.items()
    }
    return AggregateReport(
        overall=overall,
        per_color=per_color,
        first_guess=first_guess,
        first_guess_excluded=excluded,
    )


# ---------------------------------------------------------------------------
# guess-allowance sweep
# ---------------------------------------------------------------------------


@dataclass
class SweepCurve:
    budget: int
    total: int
    overall: list[Rate]  # index k: solved with at most k incorrect guesses
    per_color: dict[str, list[Rate]]

    def to_dict(self) -> dict:
        return {
            "budget": self.budget,
            "total": self.total,
            "overall": [r.to_dict() for r in self.overall],
            "per_color": {
                c: [r.to_dict() for r in rates] for c, rates in self.per_color.items()
            },
        }


def sweep_allowance(transcripts: Sequence[Transcript]) -> SweepCurve:
    """Solve fraction as a function of allowed incorrect guesses k <= B.

    Only valid for the deterministic embedding solver, whose guess sequence
    does not depend on the budget; transcripts must all share one budget.
    """
    if not transcripts:
        raise ConnectionsError("cannot sweep an empty transcript list")
    budgets = {t.max_incorrect for t in transcripts}
    if len(budgets) != 1:
        raise ConnectionsError(f"transcripts mix budgets {sorted(budgets)}")
    kinds = {t.solver.get("kind", "") for t in transcripts}
    if any(not k.startswith("embed") for k in kinds):
        raise ConnectionsError(
            "allowance sweeps need the deterministic embedding solver; "
            f"got {sorted(kinds)}"
        )
    budget = budgets.pop()
    total = len(transcripts)
    overall = [
        Rate(
            sum(1 for t in transcripts if t.won and t.incorrect_count <= k), total
        )
        for k in range(budget + 1)
    ]
    per_color: dict[str, list[Rate]] = {}
    for color in COLOR_ORDER:
        spent = [t.incorrect_guesses_before_color(color) for t in transcripts]
        per_color[color] = [
            Rate(sum(1 for s in spent if s is not None and s <= k), total)
            for k in range(budget + 1)
        ]
    return SweepCurve(budget=budget, total=total, overall=overall, per_color=per_color)


# ---------------------------------------------------------------------------
# significance tests
# ---------------------------------------------------------------------------


def success_samples(
    transcripts: Sequence[Transcript], by_puzzle: bool = False
) -> list[float]:
    """Win indicators, either pooled per transcript or averaged per puzzle."""
    if not by_puzzle:
        return [1.0 if t.won else 0.0 for t in transcripts]
    per: dict[str, list[float]] = {}
    for t in transcripts:
        per.setdefault(t.puzzle_id, []).append(1.0 if t.won else 0.0)
    return [sum(v) / len(v) for _, v in sorted(per.items())]


def color_samples(
    transcripts: Sequence[Transcript], color: str, by_puzzle: bool = False
) -> list[float]:
    if not by_puzzle:
        return [1.0 if color in t.solved_colors() else 0.0 for t in transcripts]
    per: dict[str, list[float]] = {}
    for t in transcripts:
        per.setdefault(t.puzzle_id, []).append(
            1.0 if color in t.solved_colors() else 0.0
        )
    return [sum(v) / len(v) for _, v in sorted(per.items())]


def sequential_color_tests(
    transcripts: Sequence[Transcript], by_puzzle: bool = False
) -> dict[str, TTestResult | str]:
    """Paired t-test between each adjacent difficulty tier (yellow vs green,
    green vs blue, blue vs purple). Degenerate pairs report the reason."""
    out: dict[str, TTestResult | str] = {}
    for easier, harder in zip(COLOR_ORDER, COLOR_ORDER[1:]):
        key = f"{easier}_vs_{harder}"
        a = color_samples(transcripts, easier, by_puzzle)
        b = color_samples(transcripts, harder, by_puzzle)
        try:
            out[key] = paired_t(a, b)
        except StatsError as exc:
            out[key] = f"undefined: {exc}"
    return out


def compare_runs(
    a: Sequence[Transcript], b: Sequence[Transcript], by_puzzle: bool = False
) -> TTestResult:
    """Welch's t-test between two runs' success samples."""
    return welch_t(success_samples(a, by_puzzle), success_samples(b, by_puzzle))


# ---------------------------------------------------------------------------
# report files
# ---------------------------------------------------------------------------


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _csv_line(values) -> str:
    return ",".join(str(v) for v in values) + "\n"


def write_report(
    report: AggregateReport,
    transcripts: Sequence[Transcript],
    out_dir: Path | str,
    sweep: SweepCurve | None = None,
    manifest: dict | None = None,
) -> dict[str, Path]:
    """Write report.json plus CSV tables (and the run manifest when given).
    Stable field ordering throughout: same inputs, same bytes."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: dict[str, Path] = {}

    payload: dict = {"aggregate": report.to_dict()}
    if sweep is not None:
        payload["sweep"] = sweep.to_dict()
    report_path = out / "report.json"
    _write_json(report_path, payload)
    written["report"] = report_path

    per_color_path = out / "per_color.csv"
    lines = [_csv_line(["color", "successes", "total", "rate"])]
    for color in COLOR_ORDER:
        rate = report.per_color[color]
        lines.append(_csv_line([color, rate.successes, rate.total, rate.value]))
    per_color_path.write_text("".join(lines), encoding="utf-8")
    written["per_color"] = per_color_path

    first_guess_path = out / "first_guess.csv"
    lines = [_csv_line(["first_guess", "successes", "total", "rate"])]
    for klass in ("correct", "nearly_correct", "incorrect"):
        rate = report.first_guess[klass]
        lines.append(_csv_line([klass, rate.successes, rate.total, rate.value]))
    first_guess_path.write_text("".join(lines), encoding="utf-8")
    written["first_guess"] = first_guess_path

    if sweep is not None:
        sweep_path = out / "sweep.csv"
        lines = [_csv_line(["allowed_guesses", "solve_fraction"])]
        for k, rate in enumerate(sweep.overall):
            lines.append(_csv_line([k, rate.value]))
        sweep_path.write_text("".join(lines), encoding="utf-8")
        written["sweep"] = sweep_path

    transcripts_path = out / "transcripts.json"
    save_transcripts(transcripts_path, transcripts)
    written["transcripts"] = transcripts_path

    if manifest is not None:
        manifest_path = out / "manifest.json"
        _write_json(manifest_path, manifest)
        written["manifest"] = manifest_path
    return written


def load_report(path: Path | str) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))
