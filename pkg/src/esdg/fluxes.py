"""Physical fluxes, the entropy-conservative two-point flux and the
entropy-stable Lax-Friedrichs interface flux.

The two-point kernels operate on FluxStates bundles of precomputed per-node
quantities so the solver pays for logs and Lorentz factors once per node,
not once per node pair.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from . import state as st
from .errors import FluxDegeneracyError

__all__ = [
    "FluxStates",
    "MeanPack",
    "prepare_flux_states",
    "physical_flux",
    "log_mean",
    "pair_means",
    "ec_flux",
    "lf_flux",
    "ec_condition_residual",
]

_DEGENERACY_GUARD = -1e-8  # mean four-velocity norm keeps the denominator <= -1


@dataclass(frozen=True)
class FluxStates:
    """Per-node ingredients for the flux kernels (all same-shape arrays)."""

    rho: np.ndarray
    p: np.ndarray
    ux: np.ndarray
    uy: np.ndarray
    W: np.ndarray
    mux: np.ndarray
    muy: np.ndarray
    beta: np.ndarray
    ln_rho: np.ndarray
    ln_beta: np.ndarray
    cs2: np.ndarray
    D: np.ndarray
    mx: np.ndarray
    my: np.ndarray
    E: np.ndarray

    def take(self, index) -> "FluxStates":
        """Numpy-style indexing applied to every field (views where possible)."""
        return FluxStates(*(getattr(self, f.name)[index] for f in dataclasses.fields(self)))


def _concat_states(parts: list[FluxStates], axis: int = 0) -> FluxStates:
    return FluxStates(
        *(
            np.concatenate([getattr(p, f.name) for p in parts], axis=axis)
            for f in dataclasses.fields(FluxStates)
        )
    )


def prepare_flux_states(prim: st.PrimitiveState, gamma: float) -> FluxStates:
    """Precompute everything the two-point kernels need from a primitive field."""
    rho = np.asarray(prim.rho, dtype=float)
    ux = np.asarray(prim.ux, dtype=float)
    uy = np.asarray(prim.uy, dtype=float)
    p = np.asarray(prim.p, dtype=float)
    rho, ux, uy, p = np.broadcast_arrays(rho, ux, uy, p)
    W = st._lorentz(ux, uy)
    h = 1.0 + gamma / (gamma - 1.0) * p / rho
    rhohW2 = rho * h * W * W
    return FluxStates(
        rho=rho,
        p=p,
        ux=ux,
        uy=uy,
        W=W,
        mux=W * ux,
        muy=W * uy,
        beta=rho / p,
        ln_rho=np.log(rho),
        ln_beta=np.log(rho) - np.log(p),
        cs2=gamma * p / (rho * h),
        D=rho * W,
        mx=rhohW2 * ux,
        my=rhohW2 * uy,
        E=rhohW2 - p,
    )


def _physical(fs: FluxStates, ax: int) -> np.ndarray:
    if ax == 0:
        return np.stack([fs.D * fs.ux, fs.mx * fs.ux + fs.p, fs.my * fs.ux, fs.mx])
    return np.stack([fs.D * fs.uy, fs.mx * fs.uy, fs.my * fs.uy + fs.p, fs.my])


def physical_flux(prim: st.PrimitiveState, gamma: float, direction: str) -> np.ndarray:
    """Flux vector of the conservation law along x or y, shape (4, ...)."""
    ax = st._axis(direction)
    cons = st.prim_to_cons(prim, gamma)
    D, mx, my = (np.asarray(v, dtype=float) for v in (cons.D, cons.mx, cons.my))
    u = np.asarray(prim.ux if ax == 0 else prim.uy, dtype=float)
    p = np.asarray(prim.p, dtype=float)
    if ax == 0:
        parts = (D * u, mx * u + p, my * u, mx)
    else:
        parts = (D * u, mx * u, my * u + p, my)
    return np.stack(np.broadcast_arrays(*parts))


def _log_mean(a, b, ln_a, ln_b):
    """Logarithmic mean (a - b)/(ln a - ln b), series-stabilized near a = b.

    With f = (a - b)/(a + b) and u = f^2 the mean is
    (a + b)/2 * 1/(1 + u/3 + u^2/5 + u^3/7 + ...); the truncated series is
    exact to machine precision for u < 1e-4 and returns a exactly at a = b.
    """
    f = (a - b) / (a + b)
    u = f * f
    small = u < 1e-4
    series = 0.5 * (a + b) / (1.0 + u * (1.0 / 3.0 + u * (1.0 / 5.0 + u * (1.0 / 7.0))))
    dln = np.where(small, 1.0, ln_a - ln_b)
    return np.where(small, series, (a - b) / dln)


def log_mean(a, b):
    """Logarithmic mean of positive numbers; continuous at a = b with value a."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(a <= 0.0) or np.any(b <= 0.0):
        raise ValueError("log_mean requires positive arguments")
    with np.errstate(divide="ignore"):
        return _log_mean(a, b, np.log(a), np.log(b))


@dataclass(frozen=True)
class MeanPack:
    """Arithmetic (bar) and logarithmic (log) means across a pair of states."""

    rho_bar: np.ndarray
    beta_bar: np.ndarray
    mux_bar: np.ndarray
    muy_bar: np.ndarray
    lorentz_bar: np.ndarray
    rho_log: np.ndarray
    beta_log: np.ndarray
    k1: np.ndarray


def _pair_means(L: FluxStates, R: FluxStates, gamma: float) -> MeanPack:
    beta_log = _log_mean(L.beta, R.beta, L.ln_beta, R.ln_beta)
    return MeanPack(
        rho_bar=0.5 * (L.rho + R.rho),
        beta_bar=0.5 * (L.beta + R.beta),
        mux_bar=0.5 * (L.mux + R.mux),
        muy_bar=0.5 * (L.muy + R.muy),
        lorentz_bar=0.5 * (L.W + R.W),
        rho_log=_log_mean(L.rho, R.rho, L.ln_rho, R.ln_rho),
        beta_log=beta_log,
        k1=1.0 + 1.0 / ((gamma - 1.0) * beta_log),
    )


def pair_means(primL: st.PrimitiveState, primR: st.PrimitiveState, gamma: float) -> MeanPack:
    """Means consumed by the entropy-conservative flux."""
    return _pair_means(
        prepare_flux_states(primL, gamma), prepare_flux_states(primR, gamma), gamma
    )


def _ec_kernel(L: FluxStates, R: FluxStates, gamma: float, ax: int) -> np.ndarray:
    """Entropy-conservative two-point flux; symmetric and consistent.

    The y-direction flux is the x-direction flux of the axis-swapped states
    with the momentum components swapped back.
    """
    m = _pair_means(L, R, gamma)
    mu_n = m.mux_bar if ax == 0 else m.muy_bar  # normal component
    mu_t = m.muy_bar if ax == 0 else m.mux_bar  # transverse component
    denom = m.mux_bar * m.mux_bar + m.muy_bar * m.muy_bar - m.lorentz_bar * m.lorentz_bar
    if np.any(denom > _DEGENERACY_GUARD):
        raise FluxDegeneracyError("two-point flux denominator lost its sign margin")
    p_bar = m.rho_bar / m.beta_bar
    f4 = -m.lorentz_bar * (m.k1 * m.rho_log * mu_n + mu_n * p_bar) / denom
    f1 = m.rho_log * mu_n
    f_n = (mu_n / m.lorentz_bar) * f4 + p_bar
    f_t = (mu_t / m.lorentz_bar) * f4
    if ax == 0:
        return np.stack([f1, f_n, f_t, f4])
    return np.stack([f1, f_t, f_n, f4])


def ec_flux(primL: st.PrimitiveState, primR: st.PrimitiveState, gamma: float, direction: str) -> np.ndarray:
    """Entropy-conservative flux: (v_R - v_L) . f* = psi_R - psi_L."""
    ax = st._axis(direction)
    return _ec_kernel(
        prepare_flux_states(primL, gamma), prepare_flux_states(primR, gamma), gamma, ax
    )


def _lf_kernel(L: FluxStates, R: FluxStates, gamma: float, ax: int, luminal_alpha: bool = False) -> np.ndarray:
    fL = _physical(L, ax)
    fR = _physical(R, ax)
    if luminal_alpha:
        alpha = 1.0
    else:
        alpha = np.maximum(
            st._signal_bound(L.ux, L.uy, L.cs2, ax),
            st._signal_bound(R.ux, R.uy, R.cs2, ax),
        )
    jump = np.stack([R.D - L.D, R.mx - L.mx, R.my - L.my, R.E - L.E])
    return 0.5 * (fL + fR) - 0.5 * alpha * jump


def lf_flux(
    primL: st.PrimitiveState,
    primR: st.PrimitiveState,
    gamma: float,
    direction: str,
    luminal_alpha: bool = False,
) -> np.ndarray:
    """Local Lax-Friedrichs flux on conserved states.

    alpha is the larger of the two physical signal-speed bounds, or the
    speed of light when luminal_alpha is set.
    """
    ax = st._axis(direction)
    return _lf_kernel(
        prepare_flux_states(primL, gamma), prepare_flux_states(primR, gamma), gamma, ax, luminal_alpha
    )


def ec_condition_residual(
    primL: st.PrimitiveState,
    primR: st.PrimitiveState,
    flux: np.ndarray,
    gamma: float,
    direction: str,
) -> np.ndarray:
    """(v_R - v_L) . flux - (psi_R - psi_L): zero for EC fluxes, <= 0 for ES."""
    vL = st.entropy_variables(primL, gamma).stack()
    vR = st.entropy_variables(primR, gamma).stack()
    psiL = st.entropy_potential(primL, direction)
    psiR = st.entropy_potential(primR, direction)
    return np.einsum("i...,i...->...", vR - vL, np.asarray(flux, dtype=float)) - (psiR - psiL)
