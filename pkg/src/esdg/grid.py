"""Uniform structured grids and nodal field storage.

1D fields store conserved nodal values as (4, N, k+1); 2D fields as
(4, Nx, Ny, k+1, k+1) with the x node index before the y node index.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from . import state as st
from .errors import AdmissibilityError
from .sbp import QuadratureRule, gauss_lobatto

__all__ = [
    "Grid1D",
    "Grid2D",
    "DgField",
    "node_coordinate",
    "node_coordinates",
    "cell_average",
    "cell_averages",
    "project_initial_condition",
    "evaluate_field",
]


@dataclass(frozen=True)
class Grid1D:
    """N uniform elements covering [xmin, xmax]."""

    N: int
    xmin: float
    xmax: float

    def __post_init__(self):
        if self.N < 1 or not self.xmax > self.xmin:
            raise ValueError("need N >= 1 and xmax > xmin")

    @property
    def dx(self) -> float:
        return (self.xmax - self.xmin) / self.N


@dataclass(frozen=True)
class Grid2D:
    """Nx-by-Ny uniform rectangles covering [xmin, xmax] x [ymin, ymax]."""

    Nx: int
    Ny: int
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def __post_init__(self):
        if self.Nx < 1 or self.Ny < 1:
            raise ValueError("need Nx, Ny >= 1")
        if not (self.xmax > self.xmin and self.ymax > self.ymin):
            raise ValueError("degenerate domain")

    @property
    def dx(self) -> float:
        return (self.xmax - self.xmin) / self.Nx

    @property
    def dy(self) -> float:
        return (self.ymax - self.ymin) / self.Ny


@dataclass
class DgField:
    """Nodal conserved states of degree k on a structured grid."""

    grid: Union[Grid1D, Grid2D]
    k: int
    u: np.ndarray

    @property
    def ndim(self) -> int:
        return 1 if isinstance(self.grid, Grid1D) else 2

    def with_u(self, u: np.ndarray) -> "DgField":
        return dataclasses.replace(self, u=u)

    def copy(self) -> "DgField":
        return dataclasses.replace(self, u=self.u.copy())

    def conserved(self) -> st.ConservedState:
        return st.ConservedState(self.u[0], self.u[1], self.u[2], self.u[3])


def _faces(xmin: float, xmax: float, n: int) -> np.ndarray:
    """Element face coordinates; both endpoints exact, shared faces bitwise equal."""
    dx = (xmax - xmin) / n
    f = xmin + dx * np.arange(n + 1)
    f[-1] = xmax
    return f


def _axis_nodes(xmin: float, xmax: float, n: int, rule: QuadratureRule) -> np.ndarray:
    """Node coordinates (n, k+1); element endpoints reuse the face values so
    that coincident nodes of neighbouring elements are bitwise identical."""
    faces = _faces(xmin, xmax, n)
    dx = (xmax - xmin) / n
    centers = 0.5 * (faces[:-1] + faces[1:])
    x = centers[:, None] + (0.5 * dx) * rule.nodes[None, :]
    x[:, 0] = faces[:-1]
    x[:, -1] = faces[1:]
    return x


def node_coordinate(grid, element_index: int, node_index: int, rule: QuadratureRule, axis: str = "x"):
    """Physical coordinate of one node: x_i(xi) = center + xi * dx / 2."""
    if axis == "x":
        n = grid.N if isinstance(grid, Grid1D) else grid.Nx
        lo, hi = grid.xmin, grid.xmax
    elif axis == "y":
        if isinstance(grid, Grid1D):
            raise ValueError("1D grid has no y axis")
        n, lo, hi = grid.Ny, grid.ymin, grid.ymax
    else:
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    if not (0 <= element_index < n):
        raise IndexError(f"element index {element_index} out of range for {n} elements")
    if not (0 <= node_index <= rule.k):
        raise IndexError(f"node index {node_index} out of range for degree {rule.k}")
    return _axis_nodes(lo, hi, n, rule)[element_index, node_index]


def node_coordinates(grid, rule: QuadratureRule):
    """All node coordinates: (N, k+1) in 1D, meshgrids (Nx, Ny, k+1, k+1) in 2D."""
    if isinstance(grid, Grid1D):
        return _axis_nodes(grid.xmin, grid.xmax, grid.N, rule)
    xs = _axis_nodes(grid.xmin, grid.xmax, grid.Nx, rule)
    ys = _axis_nodes(grid.ymin, grid.ymax, grid.Ny, rule)
    shape = (grid.Nx, grid.Ny, rule.k + 1, rule.k + 1)
    X = np.broadcast_to(xs[:, None, :, None], shape)
    Y = np.broadcast_to(ys[None, :, None, :], shape)
    return X, Y


def _mean_last_axis(arr: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Quadrature average over the trailing node axis (reference measure 2)."""
    return arr @ (0.5 * weights)


def cell_averages(field: DgField) -> np.ndarray:
    """Quadrature cell averages of every element, shape (4, N) or (4, Nx, Ny)."""
    w = gauss_lobatto(field.k).weights
    if field.ndim == 1:
        return _mean_last_axis(field.u, w)
    return _mean_last_axis(_mean_last_axis(field.u, w), w)


def cell_average(field: DgField, element_index) -> st.ConservedState:
    """Cell average of one element as a ConservedState."""
    means = cell_averages(field)
    if field.ndim == 1:
        vals = means[:, element_index]
    else:
        ix, iy = element_index
        vals = means[:, ix, iy]
    return st.ConservedState(*(float(v) for v in vals))


def project_initial_condition(
    grid, rule: QuadratureRule, ic_function: Callable, gamma: float
) -> DgField:
    """Collocate an initial condition: conserved nodal values at mapped nodes."""
    if isinstance(grid, Grid1D):
        X = node_coordinates(grid, rule)
        prim = ic_function(X)
        shape = X.shape
    else:
        X, Y = node_coordinates(grid, rule)
        prim = ic_function(X, Y)
        shape = X.shape
    parts = [np.broadcast_to(np.asarray(v, dtype=float), shape) for v in (prim.rho, prim.ux, prim.uy, prim.p)]
    prim = st.PrimitiveState(*parts)
    try:
        cons = st.prim_to_cons(prim, gamma)
    except AdmissibilityError as exc:
        raise AdmissibilityError(f"inadmissible initial data: {exc}") from exc
    return DgField(grid=grid, k=rule.k, u=cons.stack().copy())


def evaluate_field(field: DgField, rule: QuadratureRule, xs: np.ndarray) -> np.ndarray:
    """Evaluate a 1D field's element-local polynomials at arbitrary points.

    Returns conserved values with shape (4, len(xs)).  Points on shared faces
    use the element to their right (left for the last face).
    """
    if field.ndim != 1:
        raise ValueError("evaluate_field supports 1D fields")
    grid: Grid1D = field.grid
    xs = np.asarray(xs, dtype=float)
    idx = np.clip(((xs - grid.xmin) / grid.dx).astype(int), 0, grid.N - 1)
    centers = grid.xmin + (idx + 0.5) * grid.dx
    xi = (xs - centers) / (0.5 * grid.dx)
    nodes = rule.nodes
    diff = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diff, 1.0)
    bary = 1.0 / np.prod(diff, axis=1)
    d = xi[None, :] - nodes[:, None]
    exact = np.isclose(d, 0.0, atol=1e-14)
    d_safe = np.where(exact, 1.0, d)
    terms = bary[:, None] / d_safe
    denom = terms.sum(axis=0)
    vals = field.u[:, idx, :]
    out = np.einsum("cpj,jp->cp", vals, terms) / denom
    hit = exact.any(axis=0)
    if np.any(hit):
        which = exact.argmax(axis=0)
        out[:, hit] = field.u[:, idx[hit], which[hit]]
    return out
