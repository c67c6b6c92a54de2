"""Semi-discrete entropy-stable DG residuals in 1D and 2D, boundary
handling, time-step size and entropy diagnostics.

The volume term of each element applies the entropy-conservative two-point
flux between every node pair through the split form sum_l 2 D_pl f*(w_p, w_l);
the surface term corrects the face nodes with the difference between the
nodal physical flux and the shared interface flux.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import fluxes as fx
from . import state as st
from .errors import AdmissibilityError
from .grid import DgField, Grid1D, Grid2D, _mean_last_axis
from .sbp import SbpMatrices

__all__ = [
    "BoundaryKind",
    "SolverConfig",
    "residual_1d",
    "residual_2d",
    "apply_boundary",
    "compute_dt",
    "total_entropy",
    "semidiscrete_entropy_rate",
]


class BoundaryKind(enum.Enum):
    PERIODIC = "periodic"
    OUTFLOW = "outflow"  # zeroth-order extrapolation ghost state


@dataclass(frozen=True)
class SolverConfig:
    k: int
    gamma: float
    cfl: float = 0.1
    interface_flux: str = "lf"  # "lf" or "ec"
    luminal_alpha: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("polynomial degree k must be >= 1")
        if self.cfl <= 0.0:
            raise ValueError("cfl must be positive")
        if self.gamma <= 1.0:
            raise ValueError("gamma must exceed 1")
        if self.interface_flux not in ("lf", "ec"):
            raise ValueError(f"unknown interface flux {self.interface_flux!r}")


def _check_field(field: DgField) -> None:
    ok = st.is_admissible(field.conserved())
    if not np.all(ok):
        loc = np.argwhere(~np.asarray(ok))[0]
        raise AdmissibilityError(f"inadmissible nodal state at (element, node) index {tuple(loc)}")


def _recover(field: DgField, gamma: float) -> fx.FluxStates:
    _check_field(field)
    prim = st.cons_to_prim(field.conserved(), gamma)
    return fx.prepare_flux_states(prim, gamma)


def _interface(L: fx.FluxStates, R: fx.FluxStates, config: SolverConfig, ax: int) -> np.ndarray:
    if config.interface_flux == "ec":
        return fx._ec_kernel(L, R, config.gamma, ax)
    return fx._lf_kernel(L, R, config.gamma, ax, config.luminal_alpha)


def _volume(fs: fx.FluxStates, D: np.ndarray, gamma: float, ax: int, node_axis: int) -> np.ndarray:
    """Split-form volume term: sum_l 2 D_pl f*(w_p, w_l) for every node p.

    The two-point flux is symmetric, so each unordered pair is evaluated
    once and scattered to both rows.
    """
    npts = D.shape[0]
    shape = (4,) + fs.rho.shape
    out = np.zeros(shape)
    index = [slice(None)] * fs.rho.ndim

    def node(i):
        index[node_axis] = i
        return fs.take(tuple(index))

    mover = [slice(None)] * len(shape)
    for a in range(npts):
        for b in range(a, npts):
            if D[a, b] == 0.0 and D[b, a] == 0.0:
                continue
            fstar = fx._ec_kernel(node(a), node(b), gamma, ax)
            mover[node_axis + 1] = a
            out[tuple(mover)] += (2.0 * D[a, b]) * fstar
            if b != a:
                mover[node_axis + 1] = b
                out[tuple(mover)] += (2.0 * D[b, a]) * fstar
    return out


def _face_states_1d(fs: fx.FluxStates, bc: BoundaryKind):
    """Left/right states of the N+1 faces, ghosts filled from the boundary kind."""
    trL = fs.take((slice(None), 0))
    trR = fs.take((slice(None), -1))
    if bc is BoundaryKind.PERIODIC:
        left = fx._concat_states([trR.take(slice(-1, None)), trR])
        right = fx._concat_states([trL, trL.take(slice(0, 1))])
    else:
        left = fx._concat_states([trL.take(slice(0, 1)), trR])
        right = fx._concat_states([trL, trR.take(slice(-1, None))])
    return left, right


def residual_1d(field: DgField, sbp: SbpMatrices, config: SolverConfig, bc: BoundaryKind) -> np.ndarray:
    """du/dt for a 1D field, shape (4, N, k+1)."""
    grid: Grid1D = field.grid
    fs = _recover(field, config.gamma)
    w = sbp.rule.weights

    vol = _volume(fs, sbp.D, config.gamma, ax=0, node_axis=1)

    faceL, faceR = _face_states_1d(fs, bc)
    fhat = _interface(faceL, faceR, config, ax=0)
    surf = np.zeros_like(vol)
    f_first = fx._physical(fs.take((slice(None), 0)), 0)
    f_last = fx._physical(fs.take((slice(None), -1)), 0)
    surf[:, :, 0] = (-1.0 / w[0]) * (f_first - fhat[:, :-1])
    surf[:, :, -1] += (1.0 / w[-1]) * (f_last - fhat[:, 1:])
    return (2.0 / grid.dx) * (surf - vol)


def residual_2d(field: DgField, sbp: SbpMatrices, config: SolverConfig, bc: BoundaryKind) -> np.ndarray:
    """du/dt for a 2D field: x-sweep along rows plus y-sweep along columns."""
    grid: Grid2D = field.grid
    fs = _recover(field, config.gamma)
    w = sbp.rule.weights
    gamma = config.gamma

    out = np.zeros((4,) + fs.rho.shape)

    # x sweep: for each fixed q, 1D residual along the row
    vol_x = _volume(fs, sbp.D, gamma, ax=0, node_axis=2)
    trL = fs.take((slice(None), slice(None), 0, slice(None)))
    trR = fs.take((slice(None), slice(None), -1, slice(None)))
    if bc is BoundaryKind.PERIODIC:
        left = fx._concat_states([trR.take(slice(-1, None)), trR])
        right = fx._concat_states([trL, trL.take(slice(0, 1))])
    else:
        left = fx._concat_states([trL.take(slice(0, 1)), trR])
        right = fx._concat_states([trL, trR.take(slice(-1, None))])
    fhat_x = _interface(left, right, config, ax=0)  # (4, Nx+1, Ny, k+1)
    surf_x = np.zeros_like(out)
    surf_x[:, :, :, 0, :] = (-1.0 / w[0]) * (fx._physical(trL, 0) - fhat_x[:, :-1])
    surf_x[:, :, :, -1, :] += (1.0 / w[-1]) * (fx._physical(trR, 0) - fhat_x[:, 1:])
    out += (2.0 / grid.dx) * (surf_x - vol_x)

    # y sweep: for each fixed p, 1D residual along the column
    vol_y = _volume(fs, sbp.D, gamma, ax=1, node_axis=3)
    trB = fs.take((slice(None), slice(None), slice(None), 0))
    trT = fs.take((slice(None), slice(None), slice(None), -1))
    if bc is BoundaryKind.PERIODIC:
        bot = fx._concat_states([trT.take((slice(None), slice(-1, None))), trT], axis=1)
        top = fx._concat_states([trB, trB.take((slice(None), slice(0, 1)))], axis=1)
    else:
        bot = fx._concat_states([trB.take((slice(None), slice(0, 1))), trT], axis=1)
        top = fx._concat_states([trB, trT.take((slice(None), slice(-1, None)))], axis=1)
    fhat_y = _interface(bot, top, config, ax=1)  # (4, Nx, Ny+1, k+1)
    surf_y = np.zeros_like(out)
    surf_y[:, :, :, :, 0] = (-1.0 / w[0]) * (fx._physical(trB, 1) - fhat_y[:, :, :-1])
    surf_y[:, :, :, :, -1] += (1.0 / w[-1]) * (fx._physical(trT, 1) - fhat_y[:, :, 1:])
    out += (2.0 / grid.dy) * (surf_y - vol_y)
    return out


def apply_boundary(field: DgField, bc: BoundaryKind):
    """Ghost face states the residual uses at the domain boundary.

    1D: (left_ghost, right_ghost) conserved states of shape (4,).
    2D: dict with x ghosts of shape (4, Ny, k+1) and y ghosts (4, Nx, k+1).
    """
    u = field.u
    if field.ndim == 1:
        if bc is BoundaryKind.PERIODIC:
            return u[:, -1, -1].copy(), u[:, 0, 0].copy()
        return u[:, 0, 0].copy(), u[:, -1, -1].copy()
    if bc is BoundaryKind.PERIODIC:
        return {
            "x_left": u[:, -1, :, -1, :].copy(),
            "x_right": u[:, 0, :, 0, :].copy(),
            "y_bottom": u[:, :, -1, :, -1].copy(),
            "y_top": u[:, :, 0, :, 0].copy(),
        }
    return {
        "x_left": u[:, 0, :, 0, :].copy(),
        "x_right": u[:, -1, :, -1, :].copy(),
        "y_bottom": u[:, :, 0, :, 0].copy(),
        "y_top": u[:, :, -1, :, -1].copy(),
    }


def _prim_of(field: DgField, gamma: float) -> st.PrimitiveState:
    return st.cons_to_prim(field.conserved(), gamma)


def compute_dt(field: DgField, grid, config: SolverConfig, prim: st.PrimitiveState | None = None) -> float:
    """cfl dx / lambda_max in 1D; cfl / (lx/dx + ly/dy) in 2D."""
    if prim is None:
        prim = _prim_of(field, config.gamma)
    if config.luminal_alpha:
        lx = ly = 1.0
    else:
        lx = float(np.max(st.max_signal_speed(prim, config.gamma, "x")))
        if field.ndim == 2:
            ly = float(np.max(st.max_signal_speed(prim, config.gamma, "y")))
    if field.ndim == 1:
        return config.cfl * grid.dx / lx
    return config.cfl / (lx / grid.dx + ly / grid.dy)


def total_entropy(field: DgField, sbp: SbpMatrices, gamma: float, prim: st.PrimitiveState | None = None) -> float:
    """Quadrature integral of the entropy function over the whole field."""
    if prim is None:
        prim = _prim_of(field, gamma)
    U = np.asarray(st.entropy(prim, gamma))
    w = sbp.rule.weights
    if field.ndim == 1:
        return float(field.grid.dx * np.sum(_mean_last_axis(U, w)))
    cell = _mean_last_axis(_mean_last_axis(U, w), w)
    return float(field.grid.dx * field.grid.dy * np.sum(cell))


def semidiscrete_entropy_rate(field: DgField, residual: np.ndarray, sbp: SbpMatrices, gamma: float) -> float:
    """d/dt of total entropy implied by a residual: sum of w_j v_j . (dw/dt)_j."""
    prim = _prim_of(field, gamma)
    v = st.entropy_variables(prim, gamma).stack()
    contrib = np.einsum("c...,c...->...", v, residual)
    w = sbp.rule.weights
    if field.ndim == 1:
        return float(field.grid.dx * np.sum(_mean_last_axis(contrib, w)))
    cell = _mean_last_axis(_mean_last_axis(contrib, w), w)
    return float(field.grid.dx * field.grid.dy * np.sum(cell))
