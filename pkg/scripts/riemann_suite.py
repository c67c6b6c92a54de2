#!/usr/bin/env python3
"""Run the 1D shock-tube catalog at the reference resolutions and write
solution/entropy files under runs/, ready for the plotting tools.

Default sweep: rp1..rp4 and perturb at 100 and 500 cells for k=1 and k=2,
plus the blast-wave problem at 2000 cells.  Use --quick for a small sweep.
"""
import argparse
from pathlib import Path

from esdg import RunConfig
from esdg.runner import run


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="runs")
    parser.add_argument("--quick", action="store_true", help="100 cells and k=1 only")
    args = parser.parse_args()

    problems = ("rp1", "rp2", "rp3", "rp4", "perturb")
    cells = (100,) if args.quick else (100, 500)
    degrees = (1,) if args.quick else (1, 2)
    jobs = [(pid, k, n) for pid in problems for k in degrees for n in cells]
    if not args.quick:
        jobs += [("blast", k, 2000) for k in degrees]

    for pid, k, n in jobs:
        out = Path(args.out) / f"{pid}_k{k}_n{n}"
        cfg = RunConfig(problem=pid, k=k, cells=(n,), out=str(out))
        paths = run(cfg)
        print(f"{pid} k={k} N={n}: wrote {paths['solution']}")


if __name__ == "__main__":
    main()
