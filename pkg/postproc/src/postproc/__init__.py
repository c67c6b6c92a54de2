"""Figure generation from esdg solver output files."""

from .io import lattice_width, read_entropy, read_manifest, read_solution, run_label

__all__ = ["read_solution", "read_entropy", "read_manifest", "run_label", "lattice_width"]
__version__ = "0.1.0"
