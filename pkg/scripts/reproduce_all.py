#!/usr/bin/env python3
"""Run every pinned preset and write its artifacts under an output directory.

Usage:
    python scripts/reproduce_all.py --out results [--threads 2] [--preset NAME ...]

Each preset gets its own subdirectory with trials.csv, convergence.csv and
summary.json; a one-line verdict per n is printed as it finishes.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from hgraphon.cli import _print_summary, _write_run_artifacts
from hgraphon.montecarlo import run_trials
from hgraphon.presets import PRESETS


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", required=True)
    parser.add_argument("--threads", type=int, default=max(1, (os.cpu_count() or 2) - 0))
    parser.add_argument(
        "--preset", action="append", choices=sorted(PRESETS), default=None,
        help="run only these presets (default: all)",
    )
    args = parser.parse_args()

    names = args.preset or sorted(PRESETS)
    for name in names:
        preset = PRESETS[name]
        print(f"== {preset.name}: {preset.description}")
        started = time.perf_counter()
        records, _ = run_trials(preset.config, workers=args.threads)
        out_dir = os.path.join(args.out, preset.name)
        _write_run_artifacts(preset.config, records, out_dir)
        _print_summary(preset.config, records)
        print(f"   wrote {out_dir} in {time.perf_counter() - started:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
