"""``corpus`` command line: run the accept/reject corpus or the build benchmark."""

from __future__ import annotations

import argparse
import json
import sys

from .bench import BuildFailure, measure_compile_overhead
from .corpus import CATEGORIES, ManifestError, default_manifest, run_corpus


def _run(args: argparse.Namespace) -> int:
    try:
        report = run_corpus(args.manifest or default_manifest(), args.filter)
    except ManifestError as exc:
        print(f"corpus: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        for r in report.results:
            mark = "PASS" if r.passed else "FAIL"
            print(f"{mark} {r.case.name:32} {r.case.category or '-':14} {r.outcome:17} {r.seconds * 1000:7.1f} ms")
            if not r.passed:
                print(f"     {r.detail}")
        for category, row in sorted(report.by_category().items()):
            print(f"{category:14} " + " ".join(f"{k}={v}" for k, v in row.items()))
        print(f"{report.passed}/{len(report.results)} passed in {report.seconds:.2f} s")
    return 0 if report.all_passed else 1


def _bench(args: argparse.Namespace) -> int:
    try:
        result = measure_compile_overhead(args.project, args.baseline, args.reps)
    except BuildFailure as exc:
        print(f"corpus: {exc}", file=sys.stderr)
        return 1
    except (ValueError, FileNotFoundError) as exc:
        print(f"corpus: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(result.to_dict(), indent=2))
    else:
        print(f"project  median {result.project_median * 1000:8.2f} ms")
        print(f"baseline median {result.baseline_median * 1000:8.2f} ms")
        print(f"overhead {result.ratio * 100:+.2f}%")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="corpus", description="Label checker verification harness.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="check every case in a manifest")
    run.add_argument("manifest", nargs="?", help="manifest file (default: the shipped corpus)")
    run.add_argument("--filter", choices=CATEGORIES, help="only run cases of this category")
    run.add_argument("--json", action="store_true")
    run.set_defaults(func=_run)
    bench = sub.add_parser("bench", help="clean-build overhead of a project over its baseline")
    bench.add_argument("project")
    bench.add_argument("baseline")
    bench.add_argument("--reps", type=int, default=9)
    bench.add_argument("--json", action="store_true")
    bench.set_defaults(func=_bench)
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
