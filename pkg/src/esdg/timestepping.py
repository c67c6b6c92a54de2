"""Strong-stability-preserving Runge-Kutta drivers with per-stage hooks.

Every stage is a convex combination of forward-Euler steps, so any bound
the limiter chain enforces on a single Euler step survives the full update.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import solver as sv
from .errors import ConvergenceError
from .grid import DgField
from .sbp import SbpMatrices

__all__ = ["SspScheme", "SSP_RK2", "SSP_RK3", "scheme_for_degree", "ssp_step", "integrate"]


@dataclass(frozen=True)
class SspScheme:
    """Stage s computes alpha * u0 + (1 - alpha) * (u_prev + dt L(u_prev))."""

    order: int
    alphas: tuple

    def __post_init__(self):
        if any(not 0.0 <= a < 1.0 for a in self.alphas):
            raise ValueError("stage weights must lie in [0, 1) for a convex combination")


SSP_RK2 = SspScheme(order=2, alphas=(0.0, 0.5))
SSP_RK3 = SspScheme(order=3, alphas=(0.0, 0.75, 1.0 / 3.0))


def scheme_for_degree(k: int) -> SspScheme:
    """Match time order to spatial order: RK2 for k=1, RK3 otherwise."""
    return SSP_RK2 if k == 1 else SSP_RK3


def ssp_step(
    field: DgField,
    dt: float,
    rhs_operator: Callable[[DgField], np.ndarray],
    post_stage_hook: Optional[Callable[[DgField], DgField]],
    scheme: SspScheme,
) -> DgField:
    """One SSP Runge-Kutta step; the hook runs on every stage result."""
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    u0 = field.u
    f = field
    for alpha in scheme.alphas:
        euler = f.u + dt * rhs_operator(f)
        f = f.with_u(euler if alpha == 0.0 else alpha * u0 + (1.0 - alpha) * euler)
        if post_stage_hook is not None:
            f = post_stage_hook(f)
    return f


def integrate(
    field: DgField,
    t0: float,
    t_end: float,
    *,
    sbp: SbpMatrices,
    config: sv.SolverConfig,
    bc: sv.BoundaryKind,
    post_stage_hook: Optional[Callable[[DgField], DgField]] = None,
    scheme: Optional[SspScheme] = None,
    fixed_dt: Optional[float] = None,
    snapshot_times: Sequence[float] = (),
    on_snapshot: Optional[Callable[[float, DgField], None]] = None,
    max_steps: int = 2_000_000,
):
    """March a field from t0 to t_end, landing on t_end exactly.

    dt is recomputed from the current field each step (or pinned by
    fixed_dt) and clipped to the next snapshot time or the final time.
    Returns the final field and the (t, total_entropy) series sampled after
    every step, initial state included.
    """
    if t_end < t0:
        raise ValueError("t_end must not precede t0")
    residual = sv.residual_1d if field.ndim == 1 else sv.residual_2d

    def rhs(f: DgField) -> np.ndarray:
        return residual(f, sbp, config, bc)

    if scheme is None:
        scheme = scheme_for_degree(config.k)

    events = sorted(t for t in snapshot_times if t0 < t <= t_end)
    prim = sv._prim_of(field, config.gamma)
    series = [(t0, sv.total_entropy(field, sbp, config.gamma, prim=prim))]
    t = t0
    steps = 0
    while t < t_end:
        if steps >= max_steps:
            raise ConvergenceError(f"step cap {max_steps} exceeded at t={t}")
        dt = fixed_dt if fixed_dt is not None else sv.compute_dt(field, field.grid, config, prim=prim)
        t_next = min([t_end] + [e for e in events if e > t])
        landed = t + dt >= t_next
        if landed:
            dt = t_next - t
        field = ssp_step(field, dt, rhs, post_stage_hook, scheme)
        t = t_next if landed else t + dt
        prim = sv._prim_of(field, config.gamma)  # shared by the sample and the next dt
        series.append((t, sv.total_entropy(field, sbp, config.gamma, prim=prim)))
        if landed and t in events and on_snapshot is not None:
            on_snapshot(t, field)
        steps += 1
    return field, np.asarray(series)
