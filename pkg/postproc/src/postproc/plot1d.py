"""Overlaid line plots of 1D runs: profiles from solution files plus the
total-entropy evolution from the sibling entropy series.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .io import SchemaError, read_entropy, read_solution, run_label

_AXIS_LABELS = {
    "rho": "density",
    "ux": "velocity",
    "uy": "transverse velocity",
    "p": "pressure",
    "entropy": "total entropy",
}


def render(files, variables, out_path) -> None:
    runs = []
    for f in files:
        sol = read_solution(f)
        entropy_file = Path(f).parent / "entropy.dat"
        series = read_entropy(entropy_file) if entropy_file.exists() else None
        runs.append((run_label(f), sol, series))

    for var in variables:
        if var == "entropy":
            missing = [label for label, _, series in runs if series is None]
            if missing:
                raise SchemaError(f"no entropy.dat next to the solution file for: {missing}")
        else:
            for label, sol, _ in runs:
                if var not in sol:
                    raise SchemaError(f"{label}: variable {var!r} not in columns {sorted(sol)}")

    ncols = 2 if len(variables) > 1 else 1
    nrows = (len(variables) + ncols - 1) // ncols
    fig, axes = plt.subplots(nrows, ncols, figsize=(5.5 * ncols, 3.8 * nrows), squeeze=False)
    for i, var in enumerate(variables):
        ax = axes[i // ncols][i % ncols]
        for label, sol, series in runs:
            if var == "entropy":
                ax.plot(series["t"], series["total_entropy"], label=label, lw=1.2)
                ax.set_xlabel("t")
            else:
                ax.plot(sol["x"], sol[var], label=label, lw=1.0)
                ax.set_xlabel("x")
        ax.set_ylabel(_AXIS_LABELS.get(var, var))
        ax.legend(fontsize=8)
    for j in range(len(variables), nrows * ncols):
        axes[j // ncols][j % ncols].axis("off")
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot1d", description="Overlay 1D solver runs on one figure."
    )
    parser.add_argument("files", nargs="+", help="solution.dat files, one per run")
    parser.add_argument("--vars", default="rho,ux,p,entropy",
                        help="comma-separated panel variables")
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)
    variables = [v.strip() for v in args.vars.split(",") if v.strip()]
    try:
        render(args.files, variables, args.out)
    except (OSError, SchemaError, ValueError) as exc:
        print(f"plot1d: error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
