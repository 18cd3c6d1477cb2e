"""Command-line interface.

Exit codes: 0 success, 1 runtime or I/O failure, 2 invalid input (bad
dataset, bad flags), 3 the game ran fine but the puzzle was not solved.
Diagnostics go to stderr; pass --json-errors for machine-parsable ones.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .dataset import find_puzzle, load_dataset, validate_file
from .embeddings import EmbeddingTable
from .embed_solver import solve_challenge, solve_iterative
from .errors import (
    ConnectionsError,
    DatasetError,
    EmbeddingError,
    PromptError,
    PuzzleError,
    StatsError,
    TransportError,
)
from .evaluate import (
    RunConfig,
    aggregate,
    compare_runs,
    run_eval,
    sequential_color_tests,
    sweep_allowance,
    write_report,
)
from .game import GameConfig, Variant, WordOrder
from .llm_solver import SolverParams, play, play_replication
from .transcripts import Outcome, load_transcripts, save_transcripts
from .transport import CaptureTransport, HttpTransport, ReplayTransport

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_INVALID_INPUT = 2
EXIT_UNSOLVED = 3

_VARIANTS = {"iterative": Variant.ITERATIVE, "challenge": Variant.ALL_IN_ONE}
_ORDERS = {"shuffled": WordOrder.SHUFFLED, "grouped": WordOrder.GROUPED}


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _add_game_flags(sub: argparse.ArgumentParser, budget_default: int = 5) -> None:
    sub.add_argument(
        "--variant",
        choices=sorted(_VARIANTS),
        default="iterative",
        help="game variant to play (default: iterative)",
    )
    sub.add_argument(
        "--word-order",
        choices=sorted(_ORDERS),
        default="shuffled",
        help="presentation order of the 16 words (default: shuffled)",
    )
    sub.add_argument(
        "--seed", type=int, default=0, help="shuffle seed (default: 0)"
    )
    sub.add_argument(
        "--max-incorrect",
        type=int,
        default=None,
        help=f"incorrect-guess budget (default: {budget_default})",
    )
    sub.add_argument(
        "--official-rules",
        action="store_true",
        help="use the published game's budget of 4 incorrect guesses",
    )


def _resolve_budget(args, default: int = 5) -> int:
    if args.official_rules:
        if args.max_incorrect is not None:
            raise CliError(
                "--official-rules conflicts with --max-incorrect", EXIT_INVALID_INPUT
            )
        return 4
    return args.max_incorrect if args.max_incorrect is not None else default


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="connections",
        description="Play, solve, and evaluate Connections word puzzles.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--json-errors",
        action="store_true",
        help="emit diagnostics as JSON on stderr",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("validate", help="validate a puzzle dataset file")
    p.add_argument("--dataset", required=True, help="puzzle JSON file")

    p = commands.add_parser(
        "solve-embed", help="solve one puzzle with the embedding baseline"
    )
    p.add_argument("--dataset", required=True, help="puzzle JSON file")
    p.add_argument("--puzzle-id", required=True, help="puzzle to solve")
    p.add_argument("--embeddings", required=True, help="embedding table JSON file")
    p.add_argument("--out", help="write the transcript JSON here")
    _add_game_flags(p)

    p = commands.add_parser("solve-llm", help="solve one puzzle with an LLM player")
    p.add_argument("--dataset", required=True, help="puzzle JSON file")
    p.add_argument("--puzzle-id", required=True, help="puzzle to solve")
    p.add_argument(
        "--transport",
        choices=["replay", "http"],
        default="replay",
        help="chat transport (default: replay)",
    )
    p.add_argument("--fixture", help="recorded session file for --transport replay")
    p.add_argument("--base-url", default="https://api.openai.com/v1")
    p.add_argument(
        "--api-key-env",
        default="OPENAI_API_KEY",
        help="environment variable holding the API key (never a flag)",
    )
    p.add_argument("--model", default="gpt-3.5-turbo-1106", help="model name")
    p.add_argument("--chain-of-thought", action="store_true")
    p.add_argument("--max-invalid", type=int, default=5)
    p.add_argument("--capture", help="record the session to this file")
    p.add_argument("--out", help="write the transcript JSON here")
    _add_game_flags(p)

    p = commands.add_parser("eval", help="run a solver over a whole dataset")
    p.add_argument("--dataset", required=True, help="puzzle JSON file")
    p.add_argument("--solver", choices=["embed", "llm"], required=True)
    p.add_argument("--embeddings", help="embedding table (embed solver)")
    p.add_argument("--transport", choices=["replay", "http"], default="replay")
    p.add_argument(
        "--fixtures-dir", help="directory of <puzzle>__<seed>.json session files"
    )
    p.add_argument("--base-url", default="https://api.openai.com/v1")
    p.add_argument("--api-key-env", default="OPENAI_API_KEY")
    p.add_argument("--model", default="gpt-3.5-turbo-1106")
    p.add_argument("--chain-of-thought", action="store_true")
    p.add_argument("--max-invalid", type=int, default=5)
    p.add_argument(
        "--seeds", default="0", help="comma-separated seeds (default: 0)"
    )
    p.add_argument("--out", required=True, help="report output directory")
    _add_game_flags(p)

    p = commands.add_parser(
        "sweep", help="embedding-solver solve rate vs allowed guesses"
    )
    p.add_argument("--dataset", required=True, help="puzzle JSON file")
    p.add_argument("--embeddings", required=True, help="embedding table JSON file")
    p.add_argument(
        "--budget", type=int, default=500, help="guess allowance to sweep up to"
    )
    p.add_argument("--out", required=True, help="report output directory")
    _add_game_flags(p)

    p = commands.add_parser("stats", help="aggregate and test saved transcripts")
    p.add_argument("--transcripts", required=True, help="transcripts JSON file")
    p.add_argument("--compare", help="second transcripts file to test against")
    p.add_argument("--out", help="write stats JSON here")

    p = commands.add_parser(
        "replicate-ordering",
        help="single-guess all-in-one runs with the prior-work prompt",
    )
    p.add_argument("--dataset", required=True, help="puzzle JSON file")
    p.add_argument("--puzzle-id", help="run a single puzzle instead of all")
    p.add_argument(
        "--word-order",
        choices=sorted(_ORDERS),
        default="shuffled",
        help="grouped reproduces the ordering confound",
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--transport", choices=["replay", "http"], default="replay")
    p.add_argument(
        "--fixtures-dir", help="directory of <puzzle>__<seed>.json session files"
    )
    p.add_argument("--fixture", help="session file when using --puzzle-id")
    p.add_argument("--base-url", default="https://api.openai.com/v1")
    p.add_argument("--api-key-env", default="OPENAI_API_KEY")
    p.add_argument("--model", default="gpt-3.5-turbo-1106")
    p.add_argument("--out", help="write transcripts JSON here")
    return parser


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _write_or_emit(payload: dict, out: str | None) -> None:
    if out:
        Path(out).write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    else:
        _emit(payload)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_validate(args) -> int:
    report = validate_file(args.dataset)
    payload = {
        "ok": report.ok,
        "issues": [i.to_dict() for i in report.issues],
        "stats": report.stats.to_dict() if report.stats else None,
    }
    _emit(payload)
    return EXIT_OK if report.ok else EXIT_INVALID_INPUT


def _cmd_solve_embed(args) -> int:
    puzzles = load_dataset(args.dataset)
    puzzle = find_puzzle(puzzles, args.puzzle_id)
    table = EmbeddingTable.load(args.embeddings)
    config = GameConfig(
        variant=_VARIANTS[args.variant],
        max_incorrect=_resolve_budget(args),
        word_order=_ORDERS[args.word_order],
        seed=args.seed,
    )
    if config.variant is Variant.ITERATIVE:
        transcript = solve_iterative(puzzle, table, config)
    else:
        transcript = solve_challenge(puzzle, table, config)
    _write_or_emit(transcript.to_dict(), args.out)
    return EXIT_OK if transcript.won else EXIT_UNSOLVED


def _make_single_transport(args):
    if args.transport == "replay":
        if not args.fixture:
            raise CliError(
                "--transport replay needs --fixture", EXIT_INVALID_INPUT
            )
        return ReplayTransport(args.fixture)
    return HttpTransport(base_url=args.base_url, api_key_env=args.api_key_env)


def _cmd_solve_llm(args) -> int:
    puzzles = load_dataset(args.dataset)
    puzzle = find_puzzle(puzzles, args.puzzle_id)
    transport = _make_single_transport(args)
    capture = None
    if args.capture:
        capture = CaptureTransport(transport)
        transport = capture
    config = GameConfig(
        variant=_VARIANTS[args.variant],
        max_incorrect=_resolve_budget(args),
        word_order=_ORDERS[args.word_order],
        seed=args.seed,
    )
    params = SolverParams(
        model_name=args.model,
        sampling_seed=args.seed,
        max_invalid=args.max_invalid,
        chain_of_thought=args.chain_of_thought,
    )
    transcript = play(puzzle, config, params, transport)
    if capture is not None:
        capture.save(args.capture)
    _write_or_emit(transcript.to_dict(), args.out)
    if transcript.outcome == Outcome.TRANSPORT_FAILURE:
        raise CliError(f"transport failed: {transcript.error or 'see transcript'}", EXIT_RUNTIME)
    return EXIT_OK if transcript.won else EXIT_UNSOLVED


def _cmd_eval(args) -> int:
    if args.solver == "embed" and not args.embeddings:
        raise CliError("--solver embed needs --embeddings", EXIT_INVALID_INPUT)
    if args.solver == "llm" and args.transport == "replay" and not args.fixtures_dir:
        raise CliError(
            "--solver llm with replay transport needs --fixtures-dir",
            EXIT_INVALID_INPUT,
        )
    solver: dict = {"kind": args.solver}
    if args.solver == "embed":
        solver["embeddings"] = args.embeddings
    else:
        solver["model"] = args.model
        solver["chain_of_thought"] = args.chain_of_thought
        if args.transport == "replay":
            solver["transport"] = {"kind": "replay", "fixtures_dir": args.fixtures_dir}
        else:
            solver["transport"] = {
                "kind": "http",
                "base_url": args.base_url,
                "api_key_env": args.api_key_env,
            }
    config = RunConfig(
        dataset=args.dataset,
        solver=solver,
        seeds=[int(s) for s in args.seeds.split(",") if s.strip()],
        variant=_VARIANTS[args.variant],
        max_incorrect=_resolve_budget(args),
        max_invalid=args.max_invalid,
        word_order=_ORDERS[args.word_order],
    )
    transcripts = run_eval(config)
    report = aggregate(transcripts)
    written = write_report(
        report, transcripts, args.out, manifest=config.to_dict()
    )
    _emit(
        {
            "overall": report.overall.to_dict(),
            "written": {k: str(v) for k, v in sorted(written.items())},
        }
    )
    return EXIT_OK


def _cmd_sweep(args) -> int:
    config = RunConfig(
        dataset=args.dataset,
        solver={"kind": "embed", "embeddings": args.embeddings},
        seeds=[args.seed],
        variant=_VARIANTS[args.variant],
        max_incorrect=_resolve_budget(args),
        word_order=_ORDERS[args.word_order],
        sweep_budget=args.budget,
    )
    transcripts = run_eval(config)
    report = aggregate(transcripts)
    curve = sweep_allowance(transcripts)
    written = write_report(
        report, transcripts, args.out, sweep=curve, manifest=config.to_dict()
    )
    _emit(
        {
            "overall": report.overall.to_dict(),
            "written": {k: str(v) for k, v in sorted(written.items())},
        }
    )
    return EXIT_OK


def _stat_payload(result) -> dict | str:
    return result.to_dict() if hasattr(result, "to_dict") else result


def _cmd_stats(args) -> int:
    transcripts = load_transcripts(args.transcripts)
    payload: dict = {
        "aggregate": aggregate(transcripts).to_dict(),
        "sequential_colors": {
            "pooled": {
                k: _stat_payload(v)
                for k, v in sequential_color_tests(transcripts).items()
            },
            "by_puzzle": {
                k: _stat_payload(v)
                for k, v in sequential_color_tests(transcripts, by_puzzle=True).items()
            },
        },
    }
    if args.compare:
        other = load_transcripts(args.compare)
        payload["compare_aggregate"] = aggregate(other).to_dict()
        comparisons = {}
        for label, by_puzzle in (("pooled", False), ("by_puzzle", True)):
            try:
                comparisons[label] = compare_runs(
                    transcripts, other, by_puzzle
                ).to_dict()
            except StatsError as exc:
                comparisons[label] = f"undefined: {exc}"
        payload["welch_vs_compare"] = comparisons
    _write_or_emit(payload, args.out)
    return EXIT_OK


def _cmd_replicate(args) -> int:
    puzzles = load_dataset(args.dataset)
    order = _ORDERS[args.word_order]
    params = SolverParams(model_name=args.model, sampling_seed=args.seed)

    def single_transport(puzzle_id: str):
        if args.transport == "http":
            return HttpTransport(base_url=args.base_url, api_key_env=args.api_key_env)
        if args.fixture:
            return ReplayTransport(args.fixture)
        if args.fixtures_dir:
            return ReplayTransport(
                Path(args.fixtures_dir) / f"{puzzle_id}__{args.seed}.json"
            )
        raise CliError(
            "replay transport needs --fixture or --fixtures-dir", EXIT_INVALID_INPUT
        )

    if args.puzzle_id:
        puzzle = find_puzzle(puzzles, args.puzzle_id)
        transcript = play_replication(
            puzzle, single_transport(puzzle.id), order, seed=args.seed, params=params
        )
        _write_or_emit(transcript.to_dict(), args.out)
        return EXIT_OK if transcript.won else EXIT_UNSOLVED

    transcripts = [
        play_replication(
            puzzle, single_transport(puzzle.id), order, seed=args.seed, params=params
        )
        for puzzle in puzzles
    ]
    report = aggregate(transcripts)
    if args.out:
        save_transcripts(args.out, transcripts)
    _emit({"word_order": args.word_order, "overall": report.overall.to_dict()})
    return EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "solve-embed": _cmd_solve_embed,
    "solve-llm": _cmd_solve_llm,
    "eval": _cmd_eval,
    "sweep": _cmd_sweep,
    "stats": _cmd_stats,
    "replicate-ordering": _cmd_replicate,
}

_INPUT_ERRORS = (DatasetError, PuzzleError, EmbeddingError, PromptError, StatsError)


def _report_error(message: str, code: int, json_errors: bool) -> None:
    if json_errors:
        print(json.dumps({"error": message, "code": code}), file=sys.stderr)
    else:
        print(f"error: {message}", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except CliError as exc:
        _report_error(str(exc), exc.code, args.json_errors)
        return exc.code
    except _INPUT_ERRORS as exc:
        _report_error(str(exc), EXIT_INVALID_INPUT, args.json_errors)
        return EXIT_INVALID_INPUT
    except (TransportError, ConnectionsError, OSError) as exc:
        _report_error(str(exc), EXIT_RUNTIME, args.json_errors)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
