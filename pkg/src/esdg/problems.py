"""Catalog of runnable test problems: smooth accuracy tests, 1D Riemann
problems and 2D quadrant Riemann problems.

Initial-condition callables accept numpy arrays of coordinates and return
PrimitiveState bundles, so projection onto a grid is a single call.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ConfigError
from .solver import BoundaryKind
from .state import PrimitiveState

__all__ = ["ProblemSpec", "accuracy_test", "isentropic_pulse", "riemann_1d", "riemann_2d", "catalog", "problem_ids"]

GAMMA_DEFAULT = 5.0 / 3.0


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    dimension: int
    xmin: float
    xmax: float
    gamma: float
    t_end: float
    boundary: BoundaryKind
    initial: Callable
    ymin: float = 0.0
    ymax: float = 1.0
    exact: Optional[Callable] = None


def accuracy_test() -> ProblemSpec:
    """Advected density wave with a closed-form solution."""

    def initial(x):
        return PrimitiveState(rho=2.0 + np.sin(2.0 * np.pi * x), ux=0.5, uy=0.0, p=1.0)

    def exact(x, t):
        return PrimitiveState(rho=2.0 + np.sin(2.0 * np.pi * (x - 0.5 * t)), ux=0.5, uy=0.0, p=1.0)

    return ProblemSpec(
        name="accuracy",
        dimension=1,
        xmin=0.0,
        xmax=1.0,
        gamma=GAMMA_DEFAULT,
        t_end=2.0,
        boundary=BoundaryKind.PERIODIC,
        initial=initial,
        exact=exact,
    )


def _char_integral(cs: np.ndarray, gamma: float) -> np.ndarray:
    """Velocity-independent part of the right-moving Riemann invariant."""
    rg = np.sqrt(gamma - 1.0)
    return np.log((rg + cs) / (rg - cs)) / rg


def isentropic_pulse(width: float = 0.3, amplitude: float = 1.0) -> ProblemSpec:
    """Smooth isentropic density pulse over (rho, u, p) = (1, 0, 100).

    Pressure follows p = K rho^gamma and the velocity keeps the left-going
    Riemann invariant J- = atanh(u) - Q(c) spatially constant, which makes
    the pulse propagate to the right without generating entropy.  J- is
    explicit in u, so u = tanh(Q(c) - Q(c_ref)).
    """
    gamma = GAMMA_DEFAULT
    rho_ref, p_ref = 1.0, 100.0
    kappa = p_ref / rho_ref**gamma

    def sound(rho):
        p = kappa * rho**gamma
        h = 1.0 + gamma / (gamma - 1.0) * p / rho
        return np.sqrt(gamma * p / (rho * h)), p

    cs_ref, _ = sound(np.asarray(rho_ref))

    def initial(x):
        x = np.asarray(x, dtype=float)
        bump = np.where(np.abs(x) < width, ((x / width) ** 2 - 1.0) ** 4, 0.0)
        rho = rho_ref * (1.0 + amplitude * bump)
        cs, p = sound(rho)
        u = np.tanh(_char_integral(cs, gamma) - _char_integral(cs_ref, gamma))
        return PrimitiveState(rho=rho, ux=u, uy=0.0, p=p)

    return ProblemSpec(
        name="isentropic",
        dimension=1,
        xmin=-0.35,
        xmax=1.0,
        gamma=gamma,
        t_end=0.8,
        boundary=BoundaryKind.OUTFLOW,
        initial=initial,
    )


_RIEMANN_1D = {
    # name: (left, right, gamma, t_end)   states are (rho, u, p)
    "rp1": ((1.0, -0.6, 10.0), (10.0, 0.5, 20.0), GAMMA_DEFAULT, 0.4),
    "rp2": ((1.0, 0.0, 1e3), (1.0, 0.0, 1e-2), GAMMA_DEFAULT, 0.4),
    "rp3": ((10.0, 0.0, 40.0 / 3.0), (1.0, 0.0, 2.0 / 3.0 * 1e-6), GAMMA_DEFAULT, 0.4),
    "rp4": ((1.0, 0.9, 1.0), (1.0, 0.0, 10.0), GAMMA_DEFAULT, 0.4),
}


def _two_state(left, right, split=0.5):
    lrho, lu, lp = left

    def initial(x):
        x = np.asarray(x, dtype=float)
        if callable(right[0]):
            rrho = right[0](x)
        else:
            rrho = right[0]
        # points exactly on the split take the left state
        rho = np.where(x <= split, lrho, rrho)
        u = np.where(x <= split, lu, right[1])
        p = np.where(x <= split, lp, right[2])
        return PrimitiveState(rho=rho, ux=u, uy=0.0, p=p)

    return initial


def riemann_1d(case_id: str) -> ProblemSpec:
    """1D Riemann problems on [0, 1] with outflow boundaries."""
    if case_id in _RIEMANN_1D:
        left, right, gamma, t_end = _RIEMANN_1D[case_id]
        initial = _two_state(left, right)
    elif case_id == "perturb":
        gamma, t_end = GAMMA_DEFAULT, 0.35
        initial = _two_state((5.0, 0.0, 50.0), (lambda x: 2.0 + 0.3 * np.sin(50.0 * x), 0.0, 5.0))
    elif case_id == "blast":
        gamma, t_end = 1.4, 0.43

        def initial(x):
            x = np.asarray(x, dtype=float)
            p = np.where(x <= 0.1, 1e3, np.where(x <= 0.9, 1e-2, 1e2))
            return PrimitiveState(rho=np.ones_like(x), ux=np.zeros_like(x), uy=0.0, p=p)

    else:
        raise ConfigError(f"unknown 1D Riemann case {case_id!r}; known: {sorted(_RIEMANN_1D) + ['perturb', 'blast']}")
    return ProblemSpec(
        name=case_id,
        dimension=1,
        xmin=0.0,
        xmax=1.0,
        gamma=gamma,
        t_end=t_end,
        boundary=BoundaryKind.OUTFLOW,
        initial=initial,
    )


_RIEMANN_2D = {
    # quadrant order: (x>.5, y>.5), (x<.5, y>.5), (x<.5, y<.5), (x>.5, y<.5)
    "rp2d1": (
        (0.5, 0.5, -0.5, 5.0),
        (1.0, 0.5, 0.5, 5.0),
        (3.0, -0.5, 0.5, 5.0),
        (1.5, -0.5, -0.5, 5.0),
    ),
    "rp2d2": (
        (0.1, 0.0, 0.0, 0.01),
        (0.1, 0.9, 0.0, 1.0),
        (0.5, 0.0, 0.0, 1.0),
        (0.1, 0.0, 0.9, 1.0),
    ),
    "rp2d3": (
        (1.0, 0.0, 0.0, 1.0),
        (0.5771, -0.3529, 0.0, 0.4),
        (1.0, -0.3529, -0.3529, 1.0),
        (0.5771, 0.0, -0.3529, 0.4),
    ),
    "rp2d4": (
        (0.035145216124503, 0.0, 0.0, 0.162931056509027),
        (0.1, 0.7, 0.0, 1.0),
        (0.5, 0.0, 0.0, 1.0),
        (0.1, 0.0, 0.7, 1.0),
    ),
}


def riemann_2d(case_id: str) -> ProblemSpec:
    """2D quadrant Riemann problems on the unit square, outflow boundaries."""
    try:
        q1, q2, q3, q4 = _RIEMANN_2D[case_id]
    except KeyError:
        raise ConfigError(f"unknown 2D Riemann case {case_id!r}; known: {sorted(_RIEMANN_2D)}") from None

    def initial(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        right = x > 0.5
        top = y > 0.5
        quad = np.where(
            right & top, 0, np.where(~right & top, 1, np.where(~right & ~top, 2, 3))
        )
        table = np.array([q1, q2, q3, q4])
        vals = table[quad]
        return PrimitiveState(rho=vals[..., 0], ux=vals[..., 1], uy=vals[..., 2], p=vals[..., 3])

    return ProblemSpec(
        name=case_id,
        dimension=2,
        xmin=0.0,
        xmax=1.0,
        ymin=0.0,
        ymax=1.0,
        gamma=GAMMA_DEFAULT,
        t_end=0.4,
        boundary=BoundaryKind.OUTFLOW,
        initial=initial,
    )


def constant_state() -> ProblemSpec:
    """Uniform admissible state; useful as a free-stream check."""

    def initial(x):
        x = np.asarray(x, dtype=float)
        ones = np.ones_like(x)
        return PrimitiveState(rho=ones, ux=0.2 * ones, uy=0.0, p=1.5 * ones)

    return ProblemSpec(
        name="constant",
        dimension=1,
        xmin=0.0,
        xmax=1.0,
        gamma=GAMMA_DEFAULT,
        t_end=0.2,
        boundary=BoundaryKind.PERIODIC,
        initial=initial,
    )


def catalog(problem_id: str) -> ProblemSpec:
    """Look up a problem by CLI identifier."""
    makers = {
        "accuracy": accuracy_test,
        "isentropic": isentropic_pulse,
        "constant": constant_state,
    }
    if problem_id in makers:
        return makers[problem_id]()
    if problem_id in _RIEMANN_1D or problem_id in ("perturb", "blast"):
        return riemann_1d(problem_id)
    if problem_id in _RIEMANN_2D:
        return riemann_2d(problem_id)
    raise ConfigError(f"unknown problem {problem_id!r}; valid ids: {', '.join(problem_ids())}")


def problem_ids() -> list[str]:
    return ["accuracy", "isentropic", "rp1", "rp2", "rp3", "rp4", "perturb", "blast",
            "rp2d1", "rp2d2", "rp2d3", "rp2d4", "constant"]
