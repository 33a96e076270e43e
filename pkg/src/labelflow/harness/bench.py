"""Clean-build timing of a labeled project against an unlabeled baseline.

Both sides are built by the same driver (``python -m labelflow.build``) in a
fresh interpreter, after deleting their ``__pycache__`` directories, so the
measured difference is the cost of checking and erasing labels.  Runs of the
two projects are interleaved to spread machine noise evenly.
"""

from __future__ import annotations

import shutil
import statistics
import subprocess
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path


class BuildFailure(RuntimeError):
    def __init__(self, project: Path, log: str):
        self.project = project
        self.log = log
        super().__init__(f"build of {project} failed:\n{log}")


@dataclass
class BenchResult:
    project: Path
    baseline: Path
    project_times: list[float] = field(default_factory=list)
    baseline_times: list[float] = field(default_factory=list)

    @property
    def project_median(self) -> float:
        return statistics.median(self.project_times)

    @property
    def baseline_median(self) -> float:
        return statistics.median(self.baseline_times)

    @property
    def ratio(self) -> float:
        """Median instrumented time over median baseline time, minus one."""
        return self.project_median / self.baseline_median - 1.0

    def to_dict(self) -> dict:
        return {
            "project": str(self.project), "baseline": str(self.baseline),
            "project_median_s": self.project_median, "baseline_median_s": self.baseline_median,
            "overhead_ratio": self.ratio, "repetitions": len(self.project_times),
        }


def source_files(path: str | Path) -> list[Path]:
    path = Path(path)
    if path.is_file():
        return [path]
    if not path.is_dir():
        raise FileNotFoundError(f"no such project: {path}")
    files = sorted(p for p in path.rglob("*.py") if "__pycache__" not in p.parts)
    if not files:
        raise FileNotFoundError(f"project {path} has no .py files")
    return files


def clean(files: list[Path]) -> None:
    for directory in {f.parent / "__pycache__" for f in files}:
        shutil.rmtree(directory, ignore_errors=True)


def timed_build(files: list[Path], project: Path) -> float:
    clean(files)
    cmd = [sys.executable, "-m", "labelflow.build", *map(str, files)]
    start = time.perf_counter()
    proc = subprocess.run(cmd, capture_output=True, text=True)
    elapsed = time.perf_counter() - start
    if proc.returncode != 0:
        raise BuildFailure(project, proc.stdout + proc.stderr)
    return elapsed


def measure_compile_overhead(project: str | Path, baseline: str | Path, repetitions: int = 9) -> BenchResult:
    """Time ``repetitions`` clean builds of each side; see :attr:`BenchResult.ratio`."""
    if repetitions < 5:
        raise ValueError("repetitions must be at least 5")
    project, baseline = Path(project), Path(baseline)
    pfiles, bfiles = source_files(project), source_files(baseline)
    result = BenchResult(project, baseline)
    # one untimed build each warms the OS file cache and surfaces failures early
    timed_build(pfiles, project)
    timed_build(bfiles, baseline)
    for _ in range(repetitions):
        result.baseline_times.append(timed_build(bfiles, baseline))
        result.project_times.append(timed_build(pfiles, project))
    clean(pfiles + bfiles)
    return result
