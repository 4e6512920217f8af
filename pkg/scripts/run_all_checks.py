#!/usr/bin/env python3
"""Run every verification suite and drop the JSON reports next to each other.

Usage:  python scripts/run_all_checks.py [outdir]
Exit code is the worst exit code of the individual suites.
"""

import pathlib
import sys

from kads.cli import main

SUITES = [
    ("bialgebra_formal", ["check-bialgebra", "--lambda", "formal"]),
    ("bialgebra_flat", ["check-bialgebra", "--lambda", "0", "--kappa-inv", "0.31"]),
    ("classify", ["classify", "--samples", "200"]),
    ("poisson_ads", ["poisson", "--lambda", "-1.0", "--kappa-inv", "0.31",
                     "--samples", "200"]),
    ("poisson_ds", ["poisson", "--lambda", "1.0", "--kappa-inv", "0.31",
                    "--samples", "200"]),
    ("nc", ["nc"]),
]


def run(outdir: pathlib.Path) -> int:
    outdir.mkdir(parents=True, exist_ok=True)
    worst = 0
    for name, args in SUITES:
        out = outdir / f"{name}.json"
        code = main(args + ["--out", str(out)])
        print(f"{name}: exit {code} -> {out}")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    target = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path("reports")
    sys.exit(run(target))
