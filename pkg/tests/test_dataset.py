import json

import pytest

from connections_toolkit.dataset import (
    DatasetStats,
    compute_stats,
    find_puzzle,
    load_dataset,
    load_fixtures,
    save_dataset,
    validate_file,
)
from connections_toolkit.errors import DatasetError
from connections_toolkit.game import Color


def write_doc(tmp_path, doc, name="data.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


def fixture_doc():
    return json.loads(
        json.dumps(
            {
                "version": 1,
                "puzzles": [
                    {
                        "id": "p1",
                        "date": "2023-07-01",
                        "groups": [
                            {"name": "A", "color": "yellow", "words": ["A1", "A2", "A3", "A4"]},
                            {"name": "B", "color": "green", "words": ["B1", "B2", "B3", "B4"]},
                            {"name": "C", "color": "blue", "words": ["C1", "C2", "C3", "C4"]},
                            {"name": "D", "color": "purple", "words": ["D1", "D2", "D3", "D4"]},
                        ],
                    }
                ],
            }
        )
    )


def test_bundled_fixtures_load():
    puzzles = load_fixtures()
    assert len(puzzles) == 6
    assert all(len(p.all_words) == 16 for p in puzzles)
    fish = find_puzzle(puzzles, "fixture-001").category_of(Color.YELLOW)
    assert fish.word_set == {"BASS", "FLOUNDER", "SALMON", "TROUT"}
    fire = find_puzzle(puzzles, "fixture-001").category_of(Color.GREEN)
    assert fire.word_set == {"ANT", "DRILL", "ISLAND", "OPAL"}


def test_loading_canonicalizes_words(tmp_path):
    doc = fixture_doc()
    doc["puzzles"][0]["groups"][0]["words"] = ["  a1", "a2 ", "a  3", "A4"]
    puzzles = load_dataset(write_doc(tmp_path, doc))
    assert puzzles[0].category_of(Color.YELLOW).word_set == {"A1", "A2", "A 3", "A4"}


def test_fifteen_word_puzzle_names_the_offender(tmp_path):
    doc = fixture_doc()
    doc["puzzles"][0]["groups"][0]["words"] = ["A1", "A2", "A3"]
    with pytest.raises(DatasetError) as err:
        load_dataset(write_doc(tmp_path, doc))
    assert "p1" in str(err.value)


def test_word_duplicated_across_categories_rejected(tmp_path):
    doc = fixture_doc()
    doc["puzzles"][0]["groups"][1]["words"][0] = "A1"
    with pytest.raises(DatasetError):
        load_dataset(write_doc(tmp_path, doc))


def test_parse_error_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"version": 1,\n  "puzzles": [', encoding="utf-8")
    with pytest.raises(DatasetError) as err:
        load_dataset(path)
    assert "line" in str(err.value)


def test_missing_file_is_io_error(tmp_path):
    with pytest.raises(DatasetError):
        load_dataset(tmp_path / "nope.json")


def test_wrong_version_rejected(tmp_path):
    doc = fixture_doc()
    doc["version"] = 99
    report = validate_file(write_doc(tmp_path, doc))
    assert not report.ok
    assert report.errors[0].rule == "version"


def test_validate_collects_all_errors(tmp_path):
    doc = fixture_doc()
    bad1 = json.loads(json.dumps(doc["puzzles"][0]))
    bad1["id"] = "p2"
    bad1["groups"][0]["words"] = ["X1", "X1", "X2", "X3"]
    bad2 = json.loads(json.dumps(doc["puzzles"][0]))
    bad2["id"] = "p3"
    bad2["date"] = "not-a-date"
    doc["puzzles"].extend([bad1, bad2])
    report = validate_file(write_doc(tmp_path, doc))
    assert not report.ok
    assert {i.puzzle_id for i in report.errors} == {"p2", "p3"}


def test_duplicate_ids_reported(tmp_path):
    doc = fixture_doc()
    doc["puzzles"].append(json.loads(json.dumps(doc["puzzles"][0])))
    report = validate_file(write_doc(tmp_path, doc))
    assert any(i.rule == "duplicate-id" for i in report.errors)


def test_empty_file_is_a_warning_with_zero_count(tmp_path):
    report = validate_file(write_doc(tmp_path, {"version": 1, "puzzles": []}))
    assert report.ok
    assert report.warnings and report.warnings[0].rule == "empty"
    assert report.stats == DatasetStats(0, 0, 0)


def test_validation_is_order_independent(tmp_path):
    doc = fixture_doc()
    bad = json.loads(json.dumps(doc["puzzles"][0]))
    bad["id"] = "p2"
    bad["groups"][3]["words"] = ["D1", "D2", "D3"]
    doc["puzzles"].append(bad)
    forward = validate_file(write_doc(tmp_path, doc, "fwd.json"))
    doc["puzzles"].reverse()
    backward = validate_file(write_doc(tmp_path, doc, "bwd.json"))
    fwd = {(i.rule, i.puzzle_id) for i in forward.errors}
    bwd = {(i.rule, i.puzzle_id) for i in backward.errors}
    assert fwd == bwd


def test_round_trip_is_identity(tmp_path, fixtures):
    path = tmp_path / "roundtrip.json"
    save_dataset(path, fixtures)
    again = load_dataset(path)
    assert again == fixtures
    # and a second save is byte-identical
    path2 = tmp_path / "roundtrip2.json"
    save_dataset(path2, again)
    assert path.read_text() == path2.read_text()


def test_stats_on_fixtures(fixtures):
    stats = compute_stats(fixtures)
    assert stats.puzzle_count == 6
    # KEY appears in both fixture-001 and fixture-004
    assert stats.shared_word_count == 1
    assert stats.distinct_word_count == 95


def test_find_puzzle_missing_id(fixtures):
    with pytest.raises(DatasetError):
        find_puzzle(fixtures, "nope")
