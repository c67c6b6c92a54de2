"""Per-stage limiters: TVB minmod slope limiting and the bound-preserving
scaling limiter on D and q(w) = E - sqrt(D^2 + |m|^2).

Both limiters preserve cell averages.  The scaling limiter relies on the
concavity of q: scaling a node toward an admissible mean can only raise q,
so a single per-element factor suffices.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import state as st
from .errors import AdmissibilityError
from .grid import DgField, cell_averages, _mean_last_axis
from .sbp import SbpMatrices
from .solver import BoundaryKind

__all__ = ["LimiterConfig", "minmod_tvb", "apply_tvb", "apply_bounds"]


@dataclass(frozen=True)
class LimiterConfig:
    tvb_m: float = 10.0
    eps: float = 1e-13

    def __post_init__(self):
        if self.tvb_m < 0.0:
            raise ValueError("tvb_m must be nonnegative")
        if not 0.0 < self.eps < 1.0:
            raise ValueError("eps must be a small positive floor")


def minmod_tvb(a, b, c, m, dx):
    """Return a unchanged when |a| <= m dx^2, else minmod(a, b, c)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    bypass = np.abs(a) <= m * dx * dx
    s = np.sign(a)
    agree = (s == np.sign(b)) & (s == np.sign(c))
    mm = s * np.minimum(np.abs(a), np.minimum(np.abs(b), np.abs(c)))
    return np.where(bypass, a, np.where(agree, mm, 0.0))


def _neighbor_means(means: np.ndarray, axis: int, bc: BoundaryKind):
    """Forward/backward cell-mean differences along one element axis."""
    if bc is BoundaryKind.PERIODIC:
        nxt = np.roll(means, -1, axis=axis)
        prv = np.roll(means, 1, axis=axis)
    else:  # outflow: zero-gradient ghost means
        first = means.take([0], axis=axis)
        last = means.take([-1], axis=axis)
        nxt = np.concatenate([np.delete(means, 0, axis=axis), last], axis=axis)
        prv = np.concatenate([first, np.delete(means, -1, axis=axis)], axis=axis)
    return nxt - means, means - prv


def _entropy_guard_revert(
    u_old: np.ndarray,
    u_new: np.ndarray,
    changed: np.ndarray,
    weights: np.ndarray,
    gamma: float,
    ndim: int,
) -> np.ndarray:
    """Keep an element's limited rebuild only if it is admissible and does
    not raise the element's quadrature entropy; otherwise restore u_old.

    Componentwise slope limiting of conserved variables has no entropy
    guarantee; this guard restores the semi-discrete entropy inequality for
    the full per-stage limiter chain.
    """
    if not np.any(changed):
        return u_new
    idx = np.nonzero(changed)
    wn = u_new[(slice(None),) + idx]  # (4, nel, nodes...) gathered per element
    wo = u_old[(slice(None),) + idx]
    ok = (wn[0] > 0.0) & (wn[3] - np.sqrt(wn[0] ** 2 + wn[1] ** 2 + wn[2] ** 2) > 0.0)
    admissible = ok.all(axis=tuple(range(1, ok.ndim)))

    def elem_entropy(wvals):
        prim = st.cons_to_prim(st.ConservedState(wvals[0], wvals[1], wvals[2], wvals[3]), gamma)
        U = np.asarray(st.entropy(prim, gamma))
        for _ in range(ndim):
            U = U @ (0.5 * weights)
        return U

    accept = admissible.copy()
    if np.any(admissible):
        sel = np.nonzero(admissible)[0]
        dU = elem_entropy(wn[:, sel]) - elem_entropy(wo[:, sel])
        accept[sel] = dU <= 0.0
    if np.all(accept):
        return u_new
    revert = tuple(ix[~accept] for ix in idx)
    u_new[(slice(None),) + revert] = u_old[(slice(None),) + revert]
    return u_new


def apply_tvb(
    field: DgField,
    sbp: SbpMatrices,
    config: LimiterConfig,
    bc: BoundaryKind,
    gamma: float | None = None,
    entropy_guard: bool = True,
) -> DgField:
    """Componentwise TVB limiter on face-trace deviations from the cell mean.

    Components whose limited face deviations differ from the actual ones are
    replaced by the linear profile mean + slope * xi (bilinear in 2D); the
    slope itself passes through the same minmod.  When gamma is given and
    entropy_guard is set, rebuilt elements that would raise their quadrature
    entropy (or leave the admissible set) are reverted.
    """
    w = sbp.rule.weights
    xi = sbp.rule.nodes
    u = field.u
    means = cell_averages(field)
    # threshold M dx^2 scaled by the element's conserved magnitude |D| + |E|:
    # keeps M dimensionless, spares smooth extrema at the default M = 10 and
    # still engages at shocks where deviations carry the state scale
    m = config.tvb_m * (np.abs(means[0]) + np.abs(means[3]))
    guard = entropy_guard and gamma is not None

    if field.ndim == 1:
        dx = field.grid.dx
        dplus, dminus = _neighbor_means(means, 1, bc)
        dev_r = u[..., -1] - means
        dev_l = means - u[..., 0]
        mod_r = minmod_tvb(dev_r, dplus, dminus, m, dx)
        mod_l = minmod_tvb(dev_l, dplus, dminus, m, dx)
        trigger = (mod_r != dev_r) | (mod_l != dev_l)
        slope = minmod_tvb(0.5 * (u[..., -1] - u[..., 0]), dplus, dminus, m, dx)
        linear = means[..., None] + slope[..., None] * xi
        u_new = np.where(trigger[..., None], linear, u)
        if guard:
            u_new = _entropy_guard_revert(u, u_new, trigger.any(axis=0), w, gamma, 1)
        return field.with_u(u_new)

    dx, dy = field.grid.dx, field.grid.dy
    # face traces averaged along the face: x-faces over q, y-faces over p
    trace_xl = _mean_last_axis(u[:, :, :, 0, :], w)
    trace_xr = _mean_last_axis(u[:, :, :, -1, :], w)
    trace_yl = _mean_last_axis(u[:, :, :, :, 0], w)
    trace_yr = _mean_last_axis(u[:, :, :, :, -1], w)

    dplus_x, dminus_x = _neighbor_means(means, 1, bc)
    dplus_y, dminus_y = _neighbor_means(means, 2, bc)

    dev_xr, dev_xl = trace_xr - means, means - trace_xl
    dev_yr, dev_yl = trace_yr - means, means - trace_yl
    mod_xr = minmod_tvb(dev_xr, dplus_x, dminus_x, m, dx)
    mod_xl = minmod_tvb(dev_xl, dplus_x, dminus_x, m, dx)
    mod_yr = minmod_tvb(dev_yr, dplus_y, dminus_y, m, dy)
    mod_yl = minmod_tvb(dev_yl, dplus_y, dminus_y, m, dy)
    trigger = (mod_xr != dev_xr) | (mod_xl != dev_xl) | (mod_yr != dev_yr) | (mod_yl != dev_yl)
    slope_x = minmod_tvb(0.5 * (trace_xr - trace_xl), dplus_x, dminus_x, m, dx)
    slope_y = minmod_tvb(0.5 * (trace_yr - trace_yl), dplus_y, dminus_y, m, dy)
    bilinear = (
        means[..., None, None]
        + slope_x[..., None, None] * xi[:, None]
        + slope_y[..., None, None] * xi[None, :]
    )
    u_new = np.where(trigger[..., None, None], bilinear, u)
    if guard:
        u_new = _entropy_guard_revert(u, u_new, trigger.any(axis=0), w, gamma, 2)
    return field.with_u(u_new)


def _margin(w: np.ndarray) -> np.ndarray:
    """q on stacked conserved components (component axis first)."""
    return w[3] - np.sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2])


def apply_bounds(field: DgField, sbp: SbpMatrices, config: LimiterConfig) -> DgField:
    """Scale nodal values toward the cell mean until D >= eps and q >= eps.

    Stage 1 rescales the D component alone (D is linear in theta, so the
    factor is explicit); stage 2 rescales the full state with the largest
    theta keeping every node's q at or above eps, found by bisection per
    violating node.  Untouched elements pass through bit-identically and
    cell averages are preserved.  Raises if a cell mean itself violates the
    bounds: the scheme has then lost admissibility at the average level.
    """
    eps = config.eps
    u = field.u
    nna = 1 if field.ndim == 1 else 2  # trailing node axes
    node_axes = tuple(range(-nna, 0))
    exp = (Ellipsis,) + (None,) * nna
    means = cell_averages(field)

    qbar = _margin(means)
    if np.any(means[0] < eps) or np.any(qbar < eps):
        raise AdmissibilityError("cell average violates the positivity bounds")

    # stage 1: density floor (exact linear scaling)
    Dmin = u[0].min(axis=node_axes)
    Dbar = means[0]
    with np.errstate(divide="ignore", invalid="ignore"):
        theta1 = np.where(Dmin < eps, (Dbar - eps) / (Dbar - Dmin), 1.0)
    theta1 = np.clip(theta1, 0.0, 1.0)
    u1 = u
    if np.any(theta1 < 1.0):
        scaled = Dbar[exp] + theta1[exp] * (u[0] - Dbar[exp])
        u1 = u.copy()
        u1[0] = np.where(theta1[exp] < 1.0, scaled, u[0])

    # stage 2: q floor, one factor per element
    q = _margin(u1)
    viol = q < eps
    if np.any(viol):
        elem_shape = means.shape[1:]
        idx = np.nonzero(viol)
        elem_idx = idx[: len(elem_shape)]
        wbar_v = means[(slice(None),) + elem_idx]
        wj = u1[(slice(None),) + idx]
        lo = np.zeros(wj.shape[1])
        hi = np.ones(wj.shape[1])
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            ok = _margin(wbar_v + mid * (wj - wbar_v)) >= eps
            lo = np.where(ok, mid, lo)
            hi = np.where(ok, hi, mid)
        theta2 = np.ones(int(np.prod(elem_shape)))
        flat = np.ravel_multi_index(elem_idx, elem_shape) if nna == 2 else elem_idx[0]
        np.minimum.at(theta2, flat, lo)
        theta2 = theta2.reshape(elem_shape)
        scaled = means[exp] + theta2[exp] * (u1 - means[exp])
        u1 = np.where(theta2[exp] < 1.0, scaled, u1)
    return field if u1 is u else field.with_u(u1)
