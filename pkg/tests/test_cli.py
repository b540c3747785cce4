import json

import pytest

from trymove.cli import main
from trymove.puzzlegen import load_puzzle
from trymove.sessionio import ingest_log


def run(args, monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("TRYMOVE_DATA_DIR", str(tmp_path / "data"))
    return main(args)


def test_gen_by_level(tmp_path, monkeypatch, capsys):
    assert run(["gen", "--level", "guidance", "--seed", "5", "--out", "p.json"],
               monkeypatch, tmp_path) == 0
    spec = load_puzzle(tmp_path / "p.json")
    assert spec.size == 2 and spec.requested_pieces == 2
    assert "wrote" in capsys.readouterr().out


def test_gen_by_shape(tmp_path, monkeypatch):
    assert run(["gen", "--size", "3", "--pieces", "4", "--fakes", "1",
                "--seed", "7", "--out", "p.json"], monkeypatch, tmp_path) == 0
    spec = load_puzzle(tmp_path / "p.json")
    assert spec.size == 3 and len(spec.fakes) == 1


def test_gen_missing_shape_is_validation_error(tmp_path, monkeypatch):
    assert run(["gen", "--seed", "3"], monkeypatch, tmp_path) == 1


def test_gen_infeasible_is_validation_error(tmp_path, monkeypatch):
    assert run(["gen", "--size", "2", "--pieces", "99", "--seed", "1"],
               monkeypatch, tmp_path) == 1


def test_solve_play_score_round_trip(tmp_path, monkeypatch, capsys):
    assert run(["solve", "--level", "guidance", "--seed", "1", "--out", "sol.jsonl"],
               monkeypatch, tmp_path) == 0
    assert run(["play", "--script", "sol.jsonl", "--out", "log.jsonl",
                "--frames-dir", "frames"], monkeypatch, tmp_path) == 0
    out = capsys.readouterr().out
    assert "completed" in out

    config, seed, events = ingest_log(tmp_path / "log.jsonl")
    assert seed == 1
    assert all(e.frame_ref for e in events)  # guidance fits its frame budget
    assert len(list((tmp_path / "frames").glob("*.pgm"))) == len(events)

    assert run(["score", "--log", "log.jsonl", "--format", "csv"],
               monkeypatch, tmp_path) == 0
    csv_out = capsys.readouterr().out
    row = csv_out.strip().splitlines()[1].split(",")
    assert row[0] == "guidance"
    assert row[2] == "-"  # guidance has no time bonus


def test_score_missing_log_is_io_error(tmp_path, monkeypatch):
    assert run(["score", "--log", "absent.jsonl"], monkeypatch, tmp_path) == 2


def test_report_reference_table(tmp_path, monkeypatch, capsys):
    assert run(["report", "--reference", "--format", "csv"], monkeypatch, tmp_path) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 17
    assert lines[1].split(",")[-1] == "322"


def test_train_eval_round_trip(tmp_path, monkeypatch, capsys):
    # Tiny recipe: just proves the wiring, not the accuracy gate.
    assert run(["train", "--out", "m.json", "--per-class", "4", "--epochs", "1"],
               monkeypatch, tmp_path) == 0
    assert run(["eval", "--model", "m.json", "--per-class", "2", "--out", "cm.csv"],
               monkeypatch, tmp_path) == 0
    out = capsys.readouterr().out
    assert "accuracy" in out
    header = (tmp_path / "cm.csv").read_text().splitlines()[0]
    assert header.startswith("g1,")


def test_solve_difficult_fits_frame_budget(tmp_path, monkeypatch):
    assert run(["solve", "--level", "difficult", "--seed", "12", "--out", "d.jsonl"],
               monkeypatch, tmp_path) == 0
    config, _, events = ingest_log(tmp_path / "d.jsonl")
    assert len(events) <= config.frame_budget
