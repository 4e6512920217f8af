#!/usr/bin/env python3
"""Dump coordinate/metric/bracket sample tables for both curvature signs.

Usage:  python scripts/export_tables.py [outdir] [samples]
"""

import pathlib
import sys

from kads.cli import main

if __name__ == "__main__":
    outdir = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path("exports")
    samples = sys.argv[2] if len(sys.argv) > 2 else "100"
    outdir.mkdir(parents=True, exist_ok=True)
    worst = 0
    for lam in ("-1.0", "-0.3", "0.3", "1.0"):
        out = outdir / f"tables_lam{lam}.csv"
        code = main(["export", "--lambda", lam, "--kappa-inv", "0.31",
                     "--samples", samples, "--format", "csv", "--out", str(out)])
        print(f"lambda={lam}: exit {code}")
        worst = max(worst, code)
    sys.exit(worst)
