"""Contour plots of 2D runs on the nodal lattice (no resampling)."""
from __future__ import annotations

import argparse
import sys
import warnings

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .io import SchemaError, lattice_width, read_solution


def render(file, variable, contours, out_path) -> None:
    sol = read_solution(file)
    if "y" not in sol:
        raise SchemaError(f"{file}: not a 2D solution file")
    base = variable[2:] if variable.startswith("ln") else variable
    if base not in sol:
        raise SchemaError(f"variable {base!r} not in columns {sorted(sol)}")
    z = sol[base]
    if variable.startswith("ln"):
        bad = z <= 0.0
        if np.any(bad):
            floor = z[~bad].min() if np.any(~bad) else 1e-300
            warnings.warn(
                f"{int(bad.sum())} nonpositive values clamped before taking the log"
            )
            z = np.where(bad, floor, z)
        z = np.log(z)

    nx = lattice_width(sol["x"])
    ny = z.size // nx
    if nx * ny != z.size:
        raise SchemaError(f"{file}: {z.size} rows do not tile a {nx}-wide lattice")
    X = sol["x"].reshape(ny, nx)
    Y = sol["y"].reshape(ny, nx)
    Z = z.reshape(ny, nx)

    fig, ax = plt.subplots(figsize=(5.4, 4.8))
    cs = ax.contour(X, Y, Z, levels=contours, linewidths=0.7)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_aspect("equal")
    label = f"ln({base})" if variable.startswith("ln") else base
    ax.set_title(f"{label}, {contours} contours")
    fig.colorbar(cs, ax=ax)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot2d", description="Contour plot of one 2D solver run."
    )
    parser.add_argument("file", help="2D solution.dat file")
    parser.add_argument("--var", default="lnrho",
                        help="column name, or ln<column> for its logarithm")
    parser.add_argument("--contours", type=int, default=25)
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        render(args.file, args.var, args.contours, args.out)
    except (OSError, SchemaError, ValueError) as exc:
        print(f"plot2d: error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
