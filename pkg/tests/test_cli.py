import json
from pathlib import Path

import pytest

from conftest import merged_block_table
from connections_toolkit.cli import build_parser, main
from connections_toolkit.dataset import fixture_path, save_dataset

SESSIONS = Path(__file__).parent / "fixtures" / "sessions"
REPLICATION = Path(__file__).parent / "fixtures" / "replication_grouped"


@pytest.fixture()
def dataset():
    return str(fixture_path())


@pytest.fixture()
def small(tmp_path, fixtures):
    puzzles = fixtures[:3]
    data = tmp_path / "small.json"
    save_dataset(data, puzzles)
    table = tmp_path / "table.json"
    merged_block_table(puzzles).save(table)
    return str(data), str(table)


def test_validate_ok(dataset, capsys):
    assert main(["validate", "--dataset", dataset]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["ok"] and payload["stats"]["puzzle_count"] == 6


def test_validate_broken_dataset(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"version": 1, "puzzles": [{"id": "x"}]}))
    assert main(["validate", "--dataset", str(bad)]) == 2
    assert not json.loads(capsys.readouterr().out)["ok"]


def test_validate_missing_file_is_invalid_input(tmp_path):
    assert main(["validate", "--dataset", str(tmp_path / "none.json")]) == 2


def test_unknown_flag_rejected(dataset):
    with pytest.raises(SystemExit) as exc:
        main(["validate", "--dataset", dataset, "--frobnicate"])
    assert exc.value.code == 2


def test_conflicting_budget_flags(dataset, small):
    data, table = small
    rc = main(
        [
            "solve-embed", "--dataset", data, "--puzzle-id", "fixture-001",
            "--embeddings", table, "--max-incorrect", "7", "--official-rules",
        ]
    )
    assert rc == 2


def test_solve_embed_win_and_transcript(small, tmp_path, capsys):
    data, table = small
    out = tmp_path / "tr.json"
    rc = main(
        [
            "solve-embed", "--dataset", data, "--puzzle-id", "fixture-002",
            "--embeddings", table, "--word-order", "grouped", "--out", str(out),
        ]
    )
    assert rc == 0
    transcript = json.loads(out.read_text())
    assert transcript["outcome"] == "won"
    assert transcript["max_incorrect"] == 5  # experiment default


def test_solve_embed_official_rules_budget(small, tmp_path):
    data, table = small
    out = tmp_path / "tr.json"
    rc = main(
        [
            "solve-embed", "--dataset", data, "--puzzle-id", "fixture-001",
            "--embeddings", table, "--official-rules", "--out", str(out),
        ]
    )
    assert rc == 0
    assert json.loads(out.read_text())["max_incorrect"] == 4


def test_solve_embed_unsolved_exit_code(small, tmp_path, fixtures, capsys):
    data, table = small
    # adversarial: right words, wrong table (random vectors force misses)
    from conftest import random_table

    bad_table = tmp_path / "bad_table.json"
    words = sorted(set().union(*(p.all_words for p in fixtures[:3])))
    random_table(words, seed=13).save(bad_table)
    rc = main(
        [
            "solve-embed", "--dataset", data, "--puzzle-id", "fixture-001",
            "--embeddings", str(bad_table), "--max-incorrect", "1",
        ]
    )
    assert rc == 3


def test_solve_llm_replay(dataset, capsys):
    rc = main(
        [
            "solve-llm", "--dataset", dataset, "--puzzle-id", "fixture-001",
            "--transport", "replay", "--fixture", str(SESSIONS / "fixture-001__0.json"),
        ]
    )
    assert rc == 0
    assert json.loads(capsys.readouterr().out)["outcome"] == "won"


def test_solve_llm_replay_lost_session(dataset, capsys):
    rc = main(
        [
            "solve-llm", "--dataset", dataset, "--puzzle-id", "fixture-003",
            "--transport", "replay", "--fixture", str(SESSIONS / "fixture-003__0.json"),
        ]
    )
    assert rc == 3


def test_solve_llm_replay_needs_fixture(dataset):
    rc = main(
        ["solve-llm", "--dataset", dataset, "--puzzle-id", "fixture-001"]
    )
    assert rc == 2


def test_eval_embed_writes_report(small, tmp_path, capsys):
    data, table = small
    out = tmp_path / "run"
    rc = main(
        [
            "eval", "--dataset", data, "--solver", "embed", "--embeddings", table,
            "--word-order", "grouped", "--out", str(out),
        ]
    )
    assert rc == 0
    report = json.loads((out / "report.json").read_text())
    assert report["aggregate"]["overall"]["rate"] == 1.0
    assert (out / "per_color.csv").exists()
    assert (out / "manifest.json").exists()
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["solver"]["kind"] == "embed"


def test_eval_llm_replay_over_sessions(dataset, tmp_path, capsys):
    out = tmp_path / "run"
    rc = main(
        [
            "eval", "--dataset", dataset, "--solver", "llm",
            "--transport", "replay", "--fixtures-dir", str(SESSIONS),
            "--seeds", "0", "--out", str(out),
        ]
    )
    assert rc == 0
    report = json.loads((out / "report.json").read_text())
    # scripted sessions: 4 wins, 1 loss, 1 invalid-abort
    assert report["aggregate"]["overall"]["successes"] == 4
    assert report["aggregate"]["overall"]["total"] == 6


def test_eval_missing_solver_inputs(dataset, tmp_path):
    assert (
        main(["eval", "--dataset", dataset, "--solver", "embed", "--out", str(tmp_path)])
        == 2
    )
    assert (
        main(["eval", "--dataset", dataset, "--solver", "llm", "--out", str(tmp_path)])
        == 2
    )


def test_sweep_writes_curve(small, tmp_path):
    data, table = small
    out = tmp_path / "sweep"
    rc = main(
        [
            "sweep", "--dataset", data, "--embeddings", table, "--budget", "6",
            "--word-order", "grouped", "--out", str(out),
        ]
    )
    assert rc == 0
    lines = (out / "sweep.csv").read_text().splitlines()
    assert lines[0] == "allowed_guesses,solve_fraction"
    assert len(lines) == 8  # header + k = 0..6


def test_stats_subcommand(small, tmp_path, capsys):
    data, table = small
    out = tmp_path / "run"
    main(
        [
            "eval", "--dataset", data, "--solver", "embed", "--embeddings", table,
            "--word-order", "grouped", "--out", str(out),
        ]
    )
    capsys.readouterr()
    rc = main(["stats", "--transcripts", str(out / "transcripts.json")])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["aggregate"]["overall"]["rate"] == 1.0
    assert set(payload["sequential_colors"]) == {"pooled", "by_puzzle"}


def test_stats_compare_reports_degenerate_welch(small, tmp_path, capsys):
    data, table = small
    out = tmp_path / "run"
    main(
        [
            "eval", "--dataset", data, "--solver", "embed", "--embeddings", table,
            "--word-order", "grouped", "--out", str(out),
        ]
    )
    capsys.readouterr()
    # comparing an all-won run against itself: zero variance, reported not crashed
    rc = main(
        [
            "stats", "--transcripts", str(out / "transcripts.json"),
            "--compare", str(out / "transcripts.json"),
        ]
    )
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["welch_vs_compare"]["pooled"].startswith("undefined:")


def test_replicate_ordering_batch(dataset, tmp_path, capsys):
    rc = main(
        [
            "replicate-ordering", "--dataset", dataset, "--word-order", "grouped",
            "--fixtures-dir", str(REPLICATION), "--out", str(tmp_path / "r.json"),
        ]
    )
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["overall"]["rate"] == 1.0


def test_replicate_ordering_single_puzzle(dataset, capsys):
    rc = main(
        [
            "replicate-ordering", "--dataset", dataset, "--puzzle-id", "fixture-001",
            "--word-order", "grouped",
            "--fixture", str(REPLICATION / "fixture-001__0.json"),
        ]
    )
    assert rc == 0


def test_json_errors_flag(tmp_path, capsys):
    rc = main(
        [
            "--json-errors", "solve-embed", "--dataset", str(tmp_path / "none.json"),
            "--puzzle-id", "x", "--embeddings", str(tmp_path / "t.json"),
        ]
    )
    assert rc == 2
    err = capsys.readouterr().err
    assert json.loads(err)["code"] == 2


def test_every_subcommand_documents_its_flags():
    parser = build_parser()
    subparsers = parser._subparsers._group_actions[0].choices
    assert set(subparsers) == {
        "validate",
        "solve-embed",
        "solve-llm",
        "eval",
        "sweep",
        "stats",
        "replicate-ordering",
    }
    for name, sub in subparsers.items():
        text = sub.format_help()
        for action in sub._actions:
            for option in action.option_strings:
                assert option in text, f"{name} help is missing {option}"
