#!/usr/bin/env python3
"""Run the four 2D quadrant Riemann problems and write their output files.

At the reference 100x100 resolution each k=2 run takes a few minutes; use
--cells to trade resolution for speed.
"""
import argparse
from pathlib import Path

from esdg import RunConfig
from esdg.runner import run


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="runs")
    parser.add_argument("--cells", type=int, default=100)
    parser.add_argument("--degrees", default="1,2")
    args = parser.parse_args()

    degrees = [int(v) for v in args.degrees.split(",")]
    for pid in ("rp2d1", "rp2d2", "rp2d3", "rp2d4"):
        for k in degrees:
            out = Path(args.out) / f"{pid}_k{k}_n{args.cells}"
            cfg = RunConfig(problem=pid, k=k, cells=(args.cells, args.cells), out=str(out))
            paths = run(cfg)
            print(f"{pid} k={k} {args.cells}x{args.cells}: wrote {paths['solution']}")


if __name__ == "__main__":
    main()
