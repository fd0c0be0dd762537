#!/usr/bin/env python3
"""Reproduce the conservatism-vs-dimension sweep.

Writes sweep.csv (boxplot statistics per dimension and method) and
sweep_plot.csv (long-format records for external plotting). The full run
covers d = 1..25 with 1000 random distributions per dimension; --quick drops
to 100 distributions on d in {1, 5, 10, 15, 20, 25}.
"""

import argparse
import pathlib
import sys

from ccrisk.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default=".", help="output directory")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--quick", action="store_true")
    parser.add_argument("--mc-samples", type=int, default=100_000)
    args = parser.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    argv = ["--seed", str(args.seed), "--mc-samples", str(args.mc_samples)]
    argv += ["--out", str(outdir / "sweep.csv")]
    if args.quick:
        argv += ["--quick"]
    argv += ["sweep", "--emit-plot-data", str(outdir / "sweep_plot.csv")]
    if args.quick:
        argv += ["--dims", "1,5,10,15,20,25"]
    code = cli_main(argv)
    if code == 0:
        print(f"wrote {outdir / 'sweep.csv'} and {outdir / 'sweep_plot.csv'}")
    return code


if __name__ == "__main__":
    sys.exit(main())
