"""Batch run orchestration: set up a problem from a RunConfig, integrate,
and write solution / entropy / manifest files, plus convergence studies.

Output formats (columnar text, one header line starting with '#'):
  solution.dat   1D: x rho ux uy p entropy      (N*(k+1) rows, element-major)
                 2D: x y rho ux uy p entropy    (row-major: y slow, x fast)
  entropy.dat    t total_entropy                (one row per time step)
  manifest.txt   effective config in parse_config format + wall time comment
"""
from __future__ import annotations

import time
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from . import limiters as lim
from . import solver as sv
from . import state as st
from . import timestepping as ts
from .config import RunConfig, format_config
from .errors import ConfigError
from .grid import DgField, Grid1D, Grid2D, node_coordinates, project_initial_condition, _mean_last_axis
from .problems import ProblemSpec, catalog
from .sbp import SbpMatrices, operators

__all__ = ["ErrorReport", "run", "convergence", "error_norms", "setup_run"]


@dataclass(frozen=True)
class ErrorReport:
    """Density errors and observed orders across a resolution sweep.

    l1 is the Gauss-Lobatto quadrature of the nodal deviation; l1_sum is the
    finite-difference-style composite sum dx * sum over every node, the
    convention the reference error tables use.
    """

    resolutions: tuple
    l1: tuple
    linf: tuple
    l1_sum: tuple

    @property
    def l1_orders(self) -> tuple:
        return tuple(np.log2(a / b) for a, b in zip(self.l1[:-1], self.l1[1:]))

    @property
    def l1_sum_orders(self) -> tuple:
        return tuple(np.log2(a / b) for a, b in zip(self.l1_sum[:-1], self.l1_sum[1:]))

    @property
    def linf_orders(self) -> tuple:
        return tuple(np.log2(a / b) for a, b in zip(self.linf[:-1], self.linf[1:]))


def _build_grid(problem: ProblemSpec, cells: tuple):
    if problem.dimension == 1:
        if len(cells) != 1:
            raise ConfigError(f"problem {problem.name!r} is 1D; give a single cell count")
        return Grid1D(N=cells[0], xmin=problem.xmin, xmax=problem.xmax)
    if len(cells) != 2:
        raise ConfigError(f"problem {problem.name!r} is 2D; give cells as NxM")
    return Grid2D(
        Nx=cells[0], Ny=cells[1],
        xmin=problem.xmin, xmax=problem.xmax,
        ymin=problem.ymin, ymax=problem.ymax,
    )


def make_limiter_chain(
    sbp: SbpMatrices,
    limiter_config: lim.LimiterConfig,
    bc: sv.BoundaryKind,
    gamma: float,
    tvb: bool = True,
    bounds: bool = True,
) -> Optional[Callable[[DgField], DgField]]:
    """Per-stage hook: bounds, then entropy-guarded TVB, then bounds again.

    The TVB pass preserves cell averages, so the trailing bounds pass always
    has admissible means to scale toward.
    """
    if not tvb and not bounds:
        return None

    def hook(field: DgField) -> DgField:
        if bounds:
            field = lim.apply_bounds(field, sbp, limiter_config)
        if tvb:
            field = lim.apply_tvb(field, sbp, limiter_config, bc, gamma=gamma)
            if bounds:
                field = lim.apply_bounds(field, sbp, limiter_config)
        return field

    return hook


def setup_run(config: RunConfig):
    """Everything integrate() needs for one configured run."""
    problem = catalog(config.problem)
    grid = _build_grid(problem, config.cells)
    sbp = operators(config.k)
    field = project_initial_condition(grid, sbp.rule, problem.initial, problem.gamma)
    solver_config = sv.SolverConfig(
        k=config.k, gamma=problem.gamma, cfl=config.cfl, interface_flux=config.flux
    )
    limiter_config = lim.LimiterConfig(tvb_m=config.tvb_m)
    hook = make_limiter_chain(
        sbp, limiter_config, problem.boundary, problem.gamma,
        tvb=config.tvb_limiter, bounds=config.bounds_limiter,
    )
    if hook is not None:
        field = hook(field)  # the projected initial condition is stage zero
    return problem, grid, sbp, field, solver_config, hook


def _solution_table(field: DgField, sbp: SbpMatrices, gamma: float):
    """(header, rows) for the solution file."""
    prim = st.cons_to_prim(field.conserved(), gamma)
    U = np.asarray(st.entropy(prim, gamma))
    rho, ux, uy, p = (np.asarray(v) for v in (prim.rho, prim.ux, prim.uy, prim.p))
    if field.ndim == 1:
        x = node_coordinates(field.grid, sbp.rule)
        cols = [x, rho, ux, uy, p, U]
        header = "x rho ux uy p entropy"
        rows = np.column_stack([c.reshape(-1) for c in cols])
        return header, rows
    X, Y = node_coordinates(field.grid, sbp.rule)
    # row-major over the global node lattice: y slow, x fast
    order = lambda a: a.transpose(1, 3, 0, 2).reshape(-1)
    cols = [X, Y, rho, ux, uy, p, U]
    header = "x y rho ux uy p entropy"
    rows = np.column_stack([order(np.ascontiguousarray(c)) for c in cols])
    return header, rows


def _write_table(path: Path, header: str, rows: np.ndarray) -> None:
    np.savetxt(path, rows, fmt="%.17e", header=header, comments="# ")


def run(config: RunConfig, out_dir: Optional[str] = None) -> dict:
    """Execute one run and write its output files; returns the file paths."""
    started = time.perf_counter()
    problem, grid, sbp, field, solver_config, hook = setup_run(config)
    out = Path(out_dir if out_dir is not None else config.out)
    out.mkdir(parents=True, exist_ok=True)

    written: dict = {}

    def snapshot(t: float, f: DgField) -> None:
        header, rows = _solution_table(f, sbp, problem.gamma)
        path = out / f"solution_t{t:.6f}.dat"
        _write_table(path, header, rows)
        written.setdefault("snapshots", []).append(path)

    field, series = ts.integrate(
        field, 0.0, problem.t_end,
        sbp=sbp, config=solver_config, bc=problem.boundary,
        post_stage_hook=hook,
        snapshot_times=config.snapshots,
        on_snapshot=snapshot,
    )

    header, rows = _solution_table(field, sbp, problem.gamma)
    _write_table(out / "solution.dat", header, rows)
    _write_table(out / "entropy.dat", "t total_entropy", series)
    wall = time.perf_counter() - started
    manifest = format_config(config) + f"# wall_time_s={wall:.3f}\n"
    (out / "manifest.txt").write_text(manifest)
    written.update(
        solution=out / "solution.dat",
        entropy=out / "entropy.dat",
        manifest=out / "manifest.txt",
    )
    return written


def error_norms(deviation: np.ndarray, sbp: SbpMatrices, dx: float):
    """L1 and Linf of a nodal deviation field (N, k+1) by Gauss-Lobatto quadrature."""
    dev = np.abs(np.asarray(deviation, dtype=float))
    l1 = dx * float(np.sum(_mean_last_axis(dev, sbp.rule.weights)))
    return l1, float(dev.max())


def _density_errors(field: DgField, sbp: SbpMatrices, gamma: float, exact, t: float):
    x = node_coordinates(field.grid, sbp.rule)
    prim = st.cons_to_prim(field.conserved(), gamma)
    rho_exact = np.broadcast_to(np.asarray(exact(x, t).rho, dtype=float), x.shape)
    dev = np.asarray(prim.rho) - rho_exact
    l1, linf = error_norms(dev, sbp, field.grid.dx)
    return l1, linf, field.grid.dx * float(np.abs(dev).sum())


def convergence(config: RunConfig, resolutions: Sequence[int]) -> ErrorReport:
    """Run a sweep of resolutions against the problem's exact solution."""
    problem = catalog(config.problem)
    if problem.exact is None:
        raise ConfigError(f"problem {config.problem!r} has no exact solution")
    if problem.dimension != 1:
        raise ConfigError("convergence sweeps support 1D problems")
    l1s, linfs, l1sums = [], [], []
    for n in resolutions:
        cfg = replace(config, cells=(int(n),))
        _, grid, sbp, field, solver_config, hook = setup_run(cfg)
        field, _ = ts.integrate(
            field, 0.0, problem.t_end,
            sbp=sbp, config=solver_config, bc=problem.boundary,
            post_stage_hook=hook,
        )
        l1, linf, l1sum = _density_errors(field, sbp, problem.gamma, problem.exact, problem.t_end)
        l1s.append(l1)
        linfs.append(linf)
        l1sums.append(l1sum)
    return ErrorReport(
        resolutions=tuple(int(n) for n in resolutions),
        l1=tuple(l1s), linf=tuple(linfs), l1_sum=tuple(l1sums),
    )
