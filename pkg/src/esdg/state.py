"""State algebra for ideal-gas special relativistic hydrodynamics.

Primitive variables are (rho, ux, uy, p) with velocities in units of the
speed of light; conserved variables are (D, mx, my, E).  Every operation
broadcasts over numpy arrays, so whole nodal fields convert in one call.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import AdmissibilityError, ConvergenceError

ArrayLike = Union[float, np.ndarray]

_AXIS = {"x": 0, "y": 1}


def _axis(direction: str) -> int:
    try:
        return _AXIS[direction]
    except KeyError:
        raise ValueError(f"direction must be 'x' or 'y', got {direction!r}") from None


@dataclass(frozen=True)
class PrimitiveState:
    """Rest-mass density, velocity and pressure in the lab frame."""

    rho: ArrayLike
    ux: ArrayLike
    uy: ArrayLike
    p: ArrayLike

    def stack(self) -> np.ndarray:
        parts = np.broadcast_arrays(
            np.asarray(self.rho, dtype=float),
            np.asarray(self.ux, dtype=float),
            np.asarray(self.uy, dtype=float),
            np.asarray(self.p, dtype=float),
        )
        return np.stack(parts)

    @classmethod
    def from_stack(cls, arr: np.ndarray) -> "PrimitiveState":
        return cls(arr[0], arr[1], arr[2], arr[3])


@dataclass(frozen=True)
class ConservedState:
    """Lab-frame density D, momentum density (mx, my) and energy density E."""

    D: ArrayLike
    mx: ArrayLike
    my: ArrayLike
    E: ArrayLike

    def stack(self) -> np.ndarray:
        parts = np.broadcast_arrays(
            np.asarray(self.D, dtype=float),
            np.asarray(self.mx, dtype=float),
            np.asarray(self.my, dtype=float),
            np.asarray(self.E, dtype=float),
        )
        return np.stack(parts)

    @classmethod
    def from_stack(cls, arr: np.ndarray) -> "ConservedState":
        return cls(arr[0], arr[1], arr[2], arr[3])


@dataclass(frozen=True)
class ThermoDerived:
    """Quantities derived from a primitive state: enthalpy, Lorentz factor,
    thermodynamic entropy s = ln(p rho^-gamma), beta = rho/p, sound speed."""

    h: ArrayLike
    gamma_lorentz: ArrayLike
    s: ArrayLike
    beta: ArrayLike
    cs: ArrayLike


@dataclass(frozen=True)
class EntropyVector:
    """Gradient of the entropy function with respect to the conserved state."""

    v0: ArrayLike
    v1: ArrayLike
    v2: ArrayLike
    v3: ArrayLike

    def stack(self) -> np.ndarray:
        parts = np.broadcast_arrays(
            np.asarray(self.v0, dtype=float),
            np.asarray(self.v1, dtype=float),
            np.asarray(self.v2, dtype=float),
            np.asarray(self.v3, dtype=float),
        )
        return np.stack(parts)


def lorentz_factor(ux: ArrayLike, uy: ArrayLike) -> ArrayLike:
    """1/sqrt(1 - |u|^2); raises AdmissibilityError for |u| >= 1."""
    ux = np.asarray(ux, dtype=float)
    uy = np.asarray(uy, dtype=float)
    u2 = ux * ux + uy * uy
    if np.any(u2 >= 1.0):
        raise AdmissibilityError("superluminal velocity: |u| >= 1")
    return 1.0 / np.sqrt(1.0 - u2)


def specific_enthalpy(rho: ArrayLike, p: ArrayLike, gamma: float) -> ArrayLike:
    """h = 1 + gamma/(gamma-1) * p/rho for the ideal equation of state."""
    rho = np.asarray(rho, dtype=float)
    p = np.asarray(p, dtype=float)
    if np.any(rho <= 0.0) or np.any(p <= 0.0):
        raise AdmissibilityError("nonpositive density or pressure")
    return 1.0 + gamma / (gamma - 1.0) * p / rho


def _lorentz(ux, uy):
    """Unchecked Lorentz factor; the symmetric grouping makes the result
    invariant under swapping the velocity components bitwise."""
    return 1.0 / np.sqrt(1.0 - (ux * ux + uy * uy))


def _check_prim(prim: PrimitiveState) -> tuple[np.ndarray, ...]:
    rho = np.asarray(prim.rho, dtype=float)
    ux = np.asarray(prim.ux, dtype=float)
    uy = np.asarray(prim.uy, dtype=float)
    p = np.asarray(prim.p, dtype=float)
    if np.any(rho <= 0.0) or np.any(p <= 0.0):
        raise AdmissibilityError("nonpositive density or pressure")
    if np.any(ux * ux + uy * uy >= 1.0):
        raise AdmissibilityError("superluminal velocity: |u| >= 1")
    return rho, ux, uy, p


def thermo(prim: PrimitiveState, gamma: float) -> ThermoDerived:
    """Bundle h, Lorentz factor, s, beta and sound speed for one state."""
    rho, ux, uy, p = _check_prim(prim)
    h = 1.0 + gamma / (gamma - 1.0) * p / rho
    W = _lorentz(ux, uy)
    s = np.log(p) - gamma * np.log(rho)
    beta = rho / p
    cs = np.sqrt(gamma * p / (rho * h))
    return ThermoDerived(h=h, gamma_lorentz=W, s=s, beta=beta, cs=cs)


def prim_to_cons(prim: PrimitiveState, gamma: float) -> ConservedState:
    """Algebraic map (rho, u, p) -> (D, m, E)."""
    rho, ux, uy, p = _check_prim(prim)
    W = _lorentz(ux, uy)
    h = 1.0 + gamma / (gamma - 1.0) * p / rho
    rhohW2 = rho * h * W * W
    return ConservedState(D=rho * W, mx=rhohW2 * ux, my=rhohW2 * uy, E=rhohW2 - p)


def admissibility_margin(cons: ConservedState) -> ArrayLike:
    """q(w) = E - sqrt(D^2 + |m|^2); positive exactly on the admissible set.

    q is concave in w, which is what makes the scaling limiter safe.
    """
    D = np.asarray(cons.D, dtype=float)
    mx = np.asarray(cons.mx, dtype=float)
    my = np.asarray(cons.my, dtype=float)
    E = np.asarray(cons.E, dtype=float)
    return E - np.sqrt(D * D + mx * mx + my * my)


def is_admissible(cons: ConservedState) -> ArrayLike:
    """Elementwise test D > 0 and E - sqrt(D^2 + |m|^2) > 0."""
    D = np.asarray(cons.D, dtype=float)
    return (D > 0.0) & (admissibility_margin(cons) > 0.0)


def _pressure_residual(p, D, mm, E, gamma):
    """g(p) = rho(p) h(p) W(p)^2 - p - E and its derivative.

    Velocity magnitude at trial pressure is |u| = |m| / (E + p); the
    factored form of 1 - |u|^2 avoids cancellation for fast flows.
    """
    Ep = E + p
    one_m_u2 = (Ep - mm) * (Ep + mm) / (Ep * Ep)
    W2 = 1.0 / one_m_u2
    W = np.sqrt(W2)
    gg = gamma / (gamma - 1.0)
    g = D * W + gg * p * W2 - p - E
    sigma2 = (mm / Ep) ** 2
    dW = -W * W2 * sigma2 / Ep
    dg = D * dW + gg * (W2 + 2.0 * p * W * dW) - 1.0
    return g, dg


def cons_to_prim(cons: ConservedState, gamma: float, tol: float = 1e-12) -> PrimitiveState:
    """Recover primitives by a safeguarded Newton iteration on the pressure.

    The root problem g(p) = rho h W^2 - p - E = 0 is bracketed by
    [0, (gamma-1) E]: g(0) < 0 and g((gamma-1)E) > 0 for every admissible
    state, so bisection fallback guarantees convergence.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    D = np.asarray(cons.D, dtype=float)
    mx = np.asarray(cons.mx, dtype=float)
    my = np.asarray(cons.my, dtype=float)
    E = np.asarray(cons.E, dtype=float)
    D, mx, my, E = np.broadcast_arrays(D, mx, my, E)
    mm = np.hypot(mx, my)
    q = E - np.hypot(D, mm)
    if np.any(D <= 0.0) or np.any(q <= 0.0):
        raise AdmissibilityError("conserved state outside the admissible set")

    # safeguarded Newton on a compressed active set: converged lanes are
    # retired every iteration so stragglers do not cost full-width passes
    shape = E.shape
    aD, amm, aE = D.reshape(-1), mm.reshape(-1), E.reshape(-1)
    act = np.arange(aD.size)
    lo = np.zeros_like(aD)
    hi = (gamma - 1.0) * aE
    p = np.maximum((gamma - 1.0) * q.reshape(-1), 1e-300)
    p_out = np.empty_like(aD)
    for _ in range(200):
        g, dg = _pressure_residual(p, aD, amm, aE, gamma)
        lo = np.where(g <= 0.0, p, lo)
        hi = np.where(g > 0.0, p, hi)
        with np.errstate(divide="ignore", invalid="ignore"):
            cand = p - g / dg
        bad = ~np.isfinite(cand) | (cand <= lo) | (cand >= hi)
        cand = np.where(bad, 0.5 * (lo + hi), cand)
        # done on an exact root, a relatively small step, or a collapsed bracket
        conv = (g == 0.0) | (np.abs(cand - p) <= tol * np.abs(cand)) | (hi - lo <= tol * lo)
        p = np.where(g == 0.0, p, cand)
        if conv.any():
            p_out[act[conv]] = p[conv]
            keep = ~conv
            act, p, lo, hi = act[keep], p[keep], lo[keep], hi[keep]
            aD, amm, aE = aD[keep], amm[keep], aE[keep]
            if act.size == 0:
                break
    else:
        raise ConvergenceError("primitive recovery did not converge in 200 iterations")
    # one guarded polish step: quadratic convergence puts p at the rounding
    # floor instead of the tolerance band, so repeated recoveries of nearly
    # identical states do not wander within tol
    p = p_out.reshape(shape)
    g, dg = _pressure_residual(p, D, mm, E, gamma)
    with np.errstate(divide="ignore", invalid="ignore"):
        cand = p - g / dg
    p = np.where(np.isfinite(cand) & (cand > 0.0) & (cand < (gamma - 1.0) * E), cand, p)

    Ep = E + p
    ux = mx / Ep
    uy = my / Ep
    one_m_u2 = (Ep - mm) * (Ep + mm) / (Ep * Ep)
    rho = D * np.sqrt(one_m_u2)
    return PrimitiveState(rho=rho, ux=ux, uy=uy, p=p)


def entropy(prim: PrimitiveState, gamma: float) -> ArrayLike:
    """Entropy function U = -rho W s / (gamma - 1), s = ln(p rho^-gamma)."""
    rho, ux, uy, p = _check_prim(prim)
    W = _lorentz(ux, uy)
    s = np.log(p) - gamma * np.log(rho)
    return -rho * W * s / (gamma - 1.0)


def entropy_flux(prim: PrimitiveState, gamma: float, direction: str) -> ArrayLike:
    """Entropy flux F = U * u along the given direction."""
    ax = _axis(direction)
    u = np.asarray(prim.ux if ax == 0 else prim.uy, dtype=float)
    return entropy(prim, gamma) * u


def entropy_variables(prim: PrimitiveState, gamma: float) -> EntropyVector:
    """v = ((gamma - s)/(gamma - 1) + beta, ux W beta, uy W beta, -W beta)."""
    rho, ux, uy, p = _check_prim(prim)
    W = _lorentz(ux, uy)
    s = np.log(p) - gamma * np.log(rho)
    beta = rho / p
    Wb = W * beta
    return EntropyVector(
        v0=(gamma - s) / (gamma - 1.0) + beta,
        v1=ux * Wb,
        v2=uy * Wb,
        v3=-Wb,
    )


def entropy_potential(prim: PrimitiveState, direction: str) -> ArrayLike:
    """psi = rho W u along the given direction (equals v.f - F)."""
    ax = _axis(direction)
    rho, ux, uy, _ = _check_prim(prim)
    W = _lorentz(ux, uy)
    return rho * W * (ux if ax == 0 else uy)


def sound_speed(prim: PrimitiveState, gamma: float) -> ArrayLike:
    """cs = sqrt(gamma p / (rho h)), always below the speed of light."""
    rho, _, _, p = _check_prim(prim)
    h = 1.0 + gamma / (gamma - 1.0) * p / rho
    return np.sqrt(gamma * p / (rho * h))


def _signal_bound(ux, uy, cs2, ax):
    """max(|lambda-|, |lambda+|) from the acoustic eigenvalues."""
    u2 = ux * ux + uy * uy
    ud = ux if ax == 0 else uy
    disc = (1.0 - u2) * (1.0 - ud * ud - (u2 - ud * ud) * cs2)
    root = np.sqrt(cs2 * disc)
    den = 1.0 - u2 * cs2
    lam_p = (ud * (1.0 - cs2) + root) / den
    lam_m = (ud * (1.0 - cs2) - root) / den
    return np.maximum(np.abs(lam_p), np.abs(lam_m))


def max_signal_speed(prim: PrimitiveState, gamma: float, direction: str) -> ArrayLike:
    """Largest characteristic speed magnitude in the given direction; < 1."""
    ax = _axis(direction)
    rho, ux, uy, p = _check_prim(prim)
    h = 1.0 + gamma / (gamma - 1.0) * p / rho
    cs2 = gamma * p / (rho * h)
    return _signal_bound(ux, uy, cs2, ax)
