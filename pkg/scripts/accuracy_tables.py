#!/usr/bin/env python3
"""Reproduce the smooth-advection convergence tables for both schemes.

Prints L1/Linf errors and observed orders for k=1 (second order) and k=2
(third order) on the accuracy problem.  The full sweep to N=1024 takes a
few minutes; pass --max-cells to shorten it.
"""
import argparse

from esdg import RunConfig
from esdg.runner import convergence


def table(k: int, resolutions) -> str:
    rep = convergence(RunConfig(problem="accuracy", k=k, cells=(resolutions[0],)), resolutions)
    lines = [f"# accuracy test, k={k} (order {k + 1}), composite-sum L1 / Linf",
             "# cells l1 l1_order linf linf_order"]
    for i, n in enumerate(rep.resolutions):
        o1 = f"{rep.l1_sum_orders[i-1]:.2f}" if i else " ..."
        oi = f"{rep.linf_orders[i-1]:.2f}" if i else " ..."
        lines.append(f"{n:5d} {rep.l1_sum[i]:.3e} {o1} {rep.linf[i]:.3e} {oi}")
    return "\n".join(lines)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-cells", type=int, default=1024)
    args = parser.parse_args()
    resolutions = [n for n in (32, 64, 128, 256, 512, 1024) if n <= args.max_cells]
    for k in (1, 2):
        print(table(k, resolutions))
        print()


if __name__ == "__main__":
    main()
