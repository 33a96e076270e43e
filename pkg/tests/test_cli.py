"""The console scripts, driven through real subprocesses."""

from __future__ import annotations

import json
import shutil
import subprocess
import sys

import pytest

from labelflow.case_studies import PROGRAMS_DIR
from labelflow.harness.corpus import default_manifest

CORPUS_DIR = default_manifest().parent


def cli(name: str, *args: str) -> subprocess.CompletedProcess:
    exe = shutil.which(name)
    if exe is None:
        pytest.skip(f"console script {name} is not installed")
    return subprocess.run([exe, *args], capture_output=True, text=True, timeout=120)


def write_calendar(path, free):
    days = ("Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun")
    path.write_text("".join(f"{d}:{'true' if f else 'false'}\n" for d, f in zip(days, free)))
    return str(path)


def test_calendar_cli(tmp_path):
    a = write_calendar(tmp_path / "a.txt", [1, 0, 1, 1, 0, 1, 0])
    b = write_calendar(tmp_path / "b.txt", [1, 1, 0, 1, 0, 1, 1])
    proc = cli("calendar", "--alice", a, "--bob", b)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "3"


def test_calendar_cli_reports_missing_day(tmp_path):
    a = write_calendar(tmp_path / "a.txt", [1] * 7)
    b = tmp_path / "b.txt"
    b.write_text("Mon:true\n")
    proc = cli("calendar", "--alice", a, "--bob", str(b))
    assert proc.returncode == 1
    assert "missing from bob's calendar" in proc.stderr


def test_battleship_cli_writes_transcript(tmp_path):
    out = tmp_path / "game.txt"
    proc = cli("battleship", "--seed-a", "3", "--seed-b", "4", "--transcript", str(out))
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.rstrip().splitlines()[-1].startswith("winner: ")
    assert out.read_text() == proc.stdout


def test_metrics_cli_json():
    proc = cli("metrics", "count", str(PROGRAMS_DIR / "battleship" / "port.py"), "--json")
    assert proc.returncode == 0, proc.stderr
    data = json.loads(proc.stdout)
    assert (data["declassify"], data["fcall_mcall"], data["pc_block"], data["relabel"]) == (2, 0, 0, 0)


def test_metrics_cli_missing_path(tmp_path):
    assert cli("metrics", "count", str(tmp_path / "nope")).returncode == 2


def test_nidiff_cli_detects_planted_leak(tmp_path):
    (tmp_path / "a.json").write_text('{"pin": 1}')
    (tmp_path / "b.json").write_text('{"pin": 2}')
    case = CORPUS_DIR / "transparency" / "transparency_planted_leak"
    proc = cli("nidiff", "run", str(case), "--secret-a", str(tmp_path / "a.json"), "--secret-b", str(tmp_path / "b.json"))
    assert proc.returncode == 1
    assert proc.stdout.startswith("leak: public outputs first differ at byte")


def test_nidiff_cli_rejects_ill_labeled_program(tmp_path):
    (tmp_path / "s.json").write_text("{}")
    case = CORPUS_DIR / "explicit-flow" / "explicit_public_assign"
    proc = cli("nidiff", "run", str(case), "--secret-a", str(tmp_path / "s.json"), "--secret-b", str(tmp_path / "s.json"))
    assert proc.returncode == 2
    assert "does not compile" in proc.stderr


def test_corpus_cli_run_filtered_json():
    proc = cli("corpus", "run", "--filter", "relabel", "--json")
    assert proc.returncode == 0, proc.stderr
    data = json.loads(proc.stdout)
    assert data["passed"] == len(data["cases"]) >= 4
    assert {c["category"] for c in data["cases"]} == {"relabel"}


def test_corpus_cli_bad_manifest(tmp_path):
    bad = tmp_path / "manifest.txt"
    bad.write_text("x somewhere maybe\n")
    proc = cli("corpus", "run", str(bad))
    assert proc.returncode == 2
    assert "verdict must be accept or reject" in proc.stderr


def test_build_cli_rejects_leaky_file(tmp_path):
    src = tmp_path / "leak.py"
    src.write_text((CORPUS_DIR / "explicit-flow" / "explicit_public_assign" / "main.py").read_text())
    proc = cli("labelflow-build", str(src))
    assert proc.returncode == 1
    assert "insecure explicit flow" in proc.stderr


def test_build_module_writes_pyc(tmp_path):
    src = tmp_path / "plain.py"
    src.write_text("x = 1\n")
    proc = subprocess.run([sys.executable, "-m", "labelflow.build", str(src)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert list((tmp_path / "__pycache__").glob("plain.*.pyc"))
