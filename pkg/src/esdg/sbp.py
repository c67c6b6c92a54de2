"""Gauss-Lobatto quadrature and summation-by-parts operators on [-1, 1].

The matrices satisfy S = M D and M D + D^T M = B = diag(-1, 0, ..., 0, 1),
the discrete analogue of integration by parts.  Everything is dense; the
degrees of interest are small (k <= 8 in the test suite).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = ["QuadratureRule", "SbpMatrices", "gauss_lobatto", "build_sbp", "operators", "differentiate"]


@dataclass(frozen=True)
class QuadratureRule:
    """Degree k Gauss-Lobatto rule: k+1 nodes including both endpoints."""

    k: int
    nodes: np.ndarray
    weights: np.ndarray


@dataclass(frozen=True)
class SbpMatrices:
    """Differentiation, mass, stiffness and boundary matrices for one rule."""

    rule: QuadratureRule
    D: np.ndarray
    M: np.ndarray
    S: np.ndarray
    B: np.ndarray
    tau: np.ndarray


def _legendre_pair(k: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """P_k(x) and P_{k-1}(x) by the three-term recurrence."""
    p_prev = np.ones_like(x)
    p = np.asarray(x, dtype=float).copy()
    for n in range(2, k + 1):
        p_prev, p = p, ((2 * n - 1) * x * p - (n - 1) * p_prev) / n
    return p, p_prev


@lru_cache(maxsize=None)
def gauss_lobatto(k: int) -> QuadratureRule:
    """Nodes are the roots of (1 - x^2) P_k'(x), weights 2/(k(k+1) P_k(x)^2).

    Interior nodes come from Newton iteration seeded with Chebyshev-Lobatto
    points; the Newton update simplifies to (x P_k - P_{k-1}) / ((k+1) P_k).
    Nodes are symmetrized about 0 so the rule is exactly antisymmetric.
    """
    if k < 1:
        raise ValueError(f"unsupported degree k={k}; need k >= 1")
    nodes = np.empty(k + 1)
    nodes[0], nodes[k] = -1.0, 1.0
    if k >= 2:
        x = -np.cos(np.pi * np.arange(1, k) / k)
        for _ in range(100):
            pk, pkm1 = _legendre_pair(k, x)
            dx = (x * pk - pkm1) / ((k + 1) * pk)
            x -= dx
            if np.max(np.abs(dx)) <= 1e-15:
                break
        nodes[1:k] = 0.5 * (x - x[::-1])
    pk, _ = _legendre_pair(k, nodes)
    weights = 2.0 / (k * (k + 1) * pk * pk)
    weights = 0.5 * (weights + weights[::-1])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(k=k, nodes=nodes, weights=weights)


def build_sbp(rule: QuadratureRule) -> SbpMatrices:
    """Assemble D, M, S, B for a Gauss-Lobatto rule.

    D uses the barycentric form of the Lagrange derivative; diagonal entries
    come from the negative-sum trick so row sums vanish identically.
    """
    x = rule.nodes
    n = x.size
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    bary = 1.0 / np.prod(diff, axis=1)
    D = (bary[None, :] / bary[:, None]) / diff
    np.fill_diagonal(D, 0.0)
    np.fill_diagonal(D, -D.sum(axis=1))
    M = np.diag(rule.weights)
    S = M @ D
    tau = np.zeros(n)
    tau[0], tau[-1] = -1.0, 1.0
    B = np.diag(tau)
    for a in (D, M, S, B, tau):
        a.setflags(write=False)
    return SbpMatrices(rule=rule, D=D, M=M, S=S, B=B, tau=tau)


@lru_cache(maxsize=None)
def operators(k: int) -> SbpMatrices:
    """Cached SBP operator set for degree k."""
    return build_sbp(gauss_lobatto(k))


def differentiate(matrices: SbpMatrices, nodal_values: np.ndarray) -> np.ndarray:
    """Apply D to nodal values; exact for polynomials of degree <= k."""
    values = np.asarray(nodal_values, dtype=float)
    n = matrices.rule.k + 1
    if values.shape[0] != n:
        raise ValueError(f"expected leading dimension {n}, got {values.shape[0]}")
    return matrices.D @ values
