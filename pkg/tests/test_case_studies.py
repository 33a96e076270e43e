from __future__ import annotations

import importlib.util
import json
import random
import subprocess
import sys

import pytest

from labelflow import compile_source
from labelflow.case_studies import PROGRAMS_DIR, program_path
from labelflow.case_studies.battleship import (
    MAX_TURNS, TranscriptError, battleship_play, main as battleship_main, parse_transcript,
)
from labelflow.case_studies.calendar_study import (
    WEEK, CalendarFormatError, CalendarMismatch, calendar_mutual_availability, intersection_oracle,
    main as calendar_main, parse_calendar,
)
from labelflow.case_studies.metrics import count_api_usage, count_source, main as metrics_main
from labelflow.case_studies.nidiff import (
    INCONCLUSIVE, INDISTINGUISHABLE, LEAK, first_divergence, main as nidiff_main, noninterference_diff,
    secret_pairs,
)


# ---------------------------------------------------------------- calendar

def test_calendar_examples():
    alice = {"Mon": True, "Tue": False, "Wed": True}
    bob = {"Mon": True, "Tue": True, "Wed": False}
    assert calendar_mutual_availability(alice, bob) == 1
    none = {d: False for d in WEEK}
    assert calendar_mutual_availability(none, none) == 0
    full = {d: True for d in WEEK}
    assert calendar_mutual_availability(full, full) == 7


def test_calendar_mismatch_names_day():
    with pytest.raises(CalendarMismatch, match="'Thu' is missing from bob"):
        calendar_mutual_availability({"Mon": True, "Thu": True}, {"Mon": True})
    with pytest.raises(CalendarMismatch, match="'Fri' is missing from alice"):
        calendar_mutual_availability({"Mon": True}, {"Mon": True, "Fri": False})


def test_calendar_random_pairs_match_oracle():
    rng = random.Random(7)
    for _ in range(30):
        alice = {d: rng.random() < 0.5 for d in WEEK}
        bob = {d: rng.random() < 0.5 for d in WEEK}
        assert calendar_mutual_availability(alice, bob) == intersection_oracle(alice, bob)


def test_calendar_parse():
    assert parse_calendar("Mon:true\n# note\n\nTue: FALSE\n") == {"Mon": True, "Tue": False}
    for bad in ("Mon\n", "Mon:maybe\n", "Mon:true\nMon:false\n"):
        with pytest.raises(CalendarFormatError):
            parse_calendar(bad)


def test_calendar_cli(tmp_path, capsys):
    (tmp_path / "a.txt").write_text("Mon:true\nTue:false\nWed:true\n")
    (tmp_path / "b.txt").write_text("Mon:true\nTue:true\nWed:false\n")
    (tmp_path / "c.txt").write_text("Mon:true\n")
    assert calendar_main(["--alice", str(tmp_path / "a.txt"), "--bob", str(tmp_path / "b.txt")]) == 0
    assert capsys.readouterr().out == "1\n"
    assert calendar_main(["--alice", str(tmp_path / "a.txt"), "--bob", str(tmp_path / "c.txt")]) == 1
    assert "'Tue' is missing" in capsys.readouterr().err


def test_calendar_port_matches_original(tmp_path):
    inputs = {"alice": {"Mon": True, "Tue": True}, "bob": {"Mon": False, "Tue": True}}
    (tmp_path / "in.json").write_text(json.dumps(inputs))
    out = subprocess.run(
        [sys.executable, str(program_path("calendar", "original")), str(tmp_path / "in.json")],
        capture_output=True, text=True, check=True,
    ).stdout
    assert out == "1\n" == f"{calendar_mutual_availability(inputs['alice'], inputs['bob'])}\n"


# -------------------------------------------------------------- battleship

def _original_module():
    spec = importlib.util.spec_from_file_location("battleship_original", program_path("battleship", "original"))
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def _fleet_cells(seed: int) -> set[tuple[int, int]]:
    mod = _original_module()
    grid = mod.empty_grid()
    mod.place_fleet(grid, random.Random(seed))
    return {(r, c) for r in range(mod.GRID_SIZE) for c in range(mod.GRID_SIZE) if grid[r][c]}


def test_battleship_deterministic_with_winner():
    first = battleship_play(1, 2)
    assert first == battleship_play(1, 2)
    turns, winner, count = parse_transcript(first)
    assert winner in ("A", "B") and count == len(turns) <= MAX_TURNS


def test_battleship_symmetric_seeds_first_mover_wins():
    for seed in (3, 11):
        _, winner, count = parse_transcript(battleship_play(seed, seed))
        assert winner == "A" and count % 2 == 1


def test_battleship_fleet_placement_invariants():
    for seed in range(5):
        cells = _fleet_cells(seed)
        assert len(cells) == sum((5, 4, 3, 3, 2))
        assert all(0 <= r < 10 and 0 <= c < 10 for r, c in cells)


def test_battleship_answers_are_consistent_with_hidden_fleets():
    seed_a, seed_b = 4, 9
    fleets = {"A": _fleet_cells(seed_b), "B": _fleet_cells(seed_a)}  # cells each shooter aims at
    turns, winner, _ = parse_transcript(battleship_play(seed_a, seed_b))
    hits = {"A": set(), "B": set()}
    for _, shooter, row, col, hit in turns:
        assert hit == ((row, col) in fleets[shooter] and (row, col) not in hits[shooter])
        if hit:
            hits[shooter].add((row, col))
    assert hits[winner] == fleets[winner]
    # the only coordinates ever printed are the guesses themselves, one per line
    for line, (_, _, row, col, _) in zip(battleship_play(seed_a, seed_b).splitlines(), turns):
        assert line.count("(") == 1 and f"({row}, {col})" in line


def test_battleship_port_matches_original():
    out = subprocess.run(
        [sys.executable, str(program_path("battleship", "original")), "1", "2"],
        capture_output=True, text=True, check=True,
    ).stdout
    assert out == battleship_play(1, 2)


def test_battleship_cli(tmp_path, capsys):
    target = tmp_path / "t.txt"
    assert battleship_main(["--seed-a", "1", "--seed-b", "2", "--transcript", str(target)]) == 0
    assert target.read_text() == capsys.readouterr().out == battleship_play(1, 2)


def test_transcript_parser_rejects_garbage():
    with pytest.raises(TranscriptError):
        parse_transcript("turn 1: A fires at (0, 0): hit\n")
    with pytest.raises(TranscriptError):
        parse_transcript("hello\n")


# ----------------------------------------------------------------- metrics

def test_metrics_table_rows():
    cal = count_api_usage(PROGRAMS_DIR / "calendar" / "port.py")
    bat = count_api_usage(PROGRAMS_DIR / "battleship" / "port.py")
    assert cal.row() == (1, 0, 1, 0) and cal.unchecked == 0
    assert bat.row() == (2, 0, 0, 0) and bat.unchecked == 0
    # the originals contribute nothing, so whole directories give the same rows
    assert count_api_usage(PROGRAMS_DIR / "calendar").row() == (1, 0, 1, 0)


def test_metrics_empty_directory(tmp_path):
    counts = count_api_usage(tmp_path)
    assert counts.row() == (0, 0, 0, 0) and counts.labeled_annotations == 0 and counts.files_scanned == 0


def test_metrics_ignores_comments_strings_imports_and_defs():
    src = (
        "from labelflow import declassify, relabel\n"
        "# declassify(x) in a comment\n"
        "s = 'relabel(x) in a string'\n"
        "def declassify_all(): pass\n"
        "x = relabel(label_new(1, A), AB)\n"
        "y = fcall(f(x)) + mcall(x.real)\n"
        "@side_effect_free_attr\n"
        "def g(): pass\n"
    )
    c = count_source(src)
    assert (c.declassify, c.relabel, c.fcall_mcall, c.side_effect_free) == (0, 1, 2, 1)
    assert c.labeled_annotations == 3


def test_metrics_skips_unreadable(tmp_path):
    (tmp_path / "ok.py").write_text("x = declassify(y)\n")
    (tmp_path / "bad.py").write_bytes(b"\xff\xfe\x00bad")
    counts = count_api_usage(tmp_path)
    assert counts.declassify == 1 and len(counts.skipped) == 1 and "bad.py" in counts.skipped[0]


def test_metrics_cli(capsys):
    assert metrics_main(["count", str(PROGRAMS_DIR / "battleship" / "port.py"), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["declassify"] == 2
    assert metrics_main(["count", "/no/such/path"]) == 2


# ------------------------------------------------------------------ nidiff

def _calendar_without_release() -> str:
    src = program_path("calendar").read_text()
    assert "print(declassify(count))" in src
    return src.replace("print(declassify(count))", "print(len(alice_cal))")


def test_nidiff_calendar_without_declassify_indistinguishable():
    prog = compile_source(_calendar_without_release())
    rng = random.Random(3)
    bob = {d: rng.random() < 0.5 for d in WEEK}
    for _ in range(10):
        alice_a = {d: rng.random() < 0.5 for d in WEEK}
        alice_b = {d: rng.random() < 0.5 for d in WEEK}
        verdict = noninterference_diff(prog, {"alice": alice_a, "bob": bob}, {"alice": alice_b, "bob": bob})
        assert verdict.verdict == INDISTINGUISHABLE


def test_nidiff_identical_secrets():
    secrets = {"alice": {"Mon": True}, "bob": {"Mon": True}}
    assert noninterference_diff(program_path("calendar"), secrets, dict(secrets)).ok


def test_nidiff_detects_planted_leak():
    leak = (
        "from labelflow import *\nfrom labelflow.diamond import A\n"
        "pin = secret_input('pin', Labeled[int, A])\nprint('pin check')\nunchecked_operation(print(pin))\n"
    )
    verdict = noninterference_diff(compile_source(leak), {"pin": 1234}, {"pin": 1299})
    assert verdict.verdict == LEAK
    assert verdict.first_divergence == len("pin check\n12")
    assert "byte 12" in verdict.describe()


def test_nidiff_inconclusive_on_crash():
    prog = compile_source((
        "from labelflow import *\nfrom labelflow.diamond import A\n"
        "x = secret_input('x', Labeled[int, A])\ny = label_new(1, A) // x\nprint('done')\n"
    ))
    verdict = noninterference_diff(prog, {"x": 1}, {"x": 0})
    assert verdict.verdict == INCONCLUSIVE and "ZeroDivisionError" in verdict.logs[0]


def test_first_divergence():
    assert first_divergence(b"abc", b"abc") is None
    assert first_divergence(b"abc", b"abd") == 2
    assert first_divergence(b"ab", b"abc") == 2


def test_secret_pairs_shape_and_distinct():
    example = {"xs": [1, 2, 3], "flag": True, "name": "ann", "cal": {"Mon": False}}
    pairs = list(secret_pairs(example, 20, seed=5))
    assert len(pairs) == 20
    for a, b in pairs:
        assert a != b
        assert len(a["xs"]) == 3 and set(a["cal"]) == {"Mon"} and isinstance(a["flag"], bool)


def test_nidiff_cli(tmp_path, capsys):
    case = PROGRAMS_DIR.parent.parent / "corpus" / "transparency" / "transparency_planted_leak"
    (tmp_path / "a.json").write_text('{"pin": 1}')
    (tmp_path / "b.json").write_text('{"pin": 2}')
    args = ["run", str(case), "--secret-a", str(tmp_path / "a.json"), "--secret-b", str(tmp_path / "b.json")]
    assert nidiff_main(args) == 1
    assert capsys.readouterr().out.startswith("leak: public outputs first differ at byte 10")
    same = ["run", str(case), "--secret-a", str(tmp_path / "a.json"), "--secret-b", str(tmp_path / "a.json")]
    assert nidiff_main(same) == 0
