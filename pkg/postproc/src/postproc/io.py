"""Readers for the solver's columnar output files.

The runner writes a one-line `# col col ...` header on every file; readers
validate requested columns against it and fail loudly on schema drift.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

SOLUTION_1D = ("x", "rho", "ux", "uy", "p", "entropy")
SOLUTION_2D = ("x", "y", "rho", "ux", "uy", "p", "entropy")
ENTROPY_COLUMNS = ("t", "total_entropy")


class SchemaError(ValueError):
    """Output file does not match the solver's documented format."""


def _read_columns(path: Path, expected: tuple) -> dict:
    text = Path(path).read_text().splitlines()
    if not text:
        raise SchemaError(f"{path}: empty file")
    header = text[0]
    if not header.startswith("#"):
        raise SchemaError(f"{path}: missing header line")
    names = tuple(header.lstrip("# ").split())
    if names != expected:
        raise SchemaError(f"{path}: columns {names} do not match expected {expected}")
    data = np.loadtxt(path, ndmin=2)
    if data.shape[1] != len(names):
        raise SchemaError(f"{path}: {data.shape[1]} data columns for {len(names)} names")
    return {name: data[:, i] for i, name in enumerate(names)}


def read_solution(path) -> dict:
    """Columns of a solution file keyed by name; accepts 1D or 2D layout."""
    path = Path(path)
    first = path.read_text().splitlines()[0] if path.read_text() else ""
    expected = SOLUTION_2D if " y " in first + " " else SOLUTION_1D
    return _read_columns(path, expected)


def read_entropy(path) -> dict:
    """The (t, total_entropy) series of a run."""
    return _read_columns(Path(path), ENTROPY_COLUMNS)


def read_manifest(path) -> dict:
    """key=value pairs of a run manifest (comment lines ignored)."""
    out = {}
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#") or "=" not in line:
            continue
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


def run_label(solution_path) -> str:
    """Legend label from the sibling manifest, falling back to the directory name."""
    manifest = Path(solution_path).parent / "manifest.txt"
    if manifest.exists():
        m = read_manifest(manifest)
        if {"problem", "k", "cells"} <= m.keys():
            return f"{m['problem']} k={m['k']} N={m['cells']}"
    return Path(solution_path).parent.name


def lattice_width(x: np.ndarray) -> int:
    """Number of x nodes per lattice row in a row-major 2D solution file.

    Rows are written x-fastest, so the first backward jump in x marks the
    row length.
    """
    drops = np.nonzero(np.diff(x) < 0)[0]
    if drops.size == 0:
        raise SchemaError("cannot infer the 2D lattice: x never wraps")
    return int(drops[0]) + 1
