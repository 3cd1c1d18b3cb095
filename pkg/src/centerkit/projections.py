"""Euclidean projections onto norm balls, affine subspaces, and intersections.

These drive the closest-pair search between disjoint convex sets. Projection
onto a single ball is closed form for every built-in norm; projection onto an
intersection uses Dykstra's correction scheme, which (unlike plain cyclic
projections) converges to the nearest point of the intersection and not just
to some feasible point.
"""

from __future__ import annotations

from typing import Callable, List, Sequence

import numpy as np

from .spaces import NormKind, NormSpec

Projector = Callable[[np.ndarray], np.ndarray]

__all__ = [
    "project_l2_ball",
    "project_box",
    "project_l1_ball",
    "project_affine",
    "ball_projector",
    "dykstra",
    "closest_pair",
]


def project_l2_ball(center: np.ndarray, radius: float, y: np.ndarray) -> np.ndarray:
    d = y - center
    nd = float(np.linalg.norm(d))
    if nd <= radius:
        return y.copy()
    return center + (radius / nd) * d


def project_box(center: np.ndarray, half_widths: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.clip(y, center - half_widths, center + half_widths)


def project_l1_ball(center: np.ndarray, radius: float, y: np.ndarray) -> np.ndarray:
    """Euclidean projection onto {x : ||x - center||_1 <= radius} by the
    sort-and-threshold rule."""
    u = y - center
    a = np.abs(u)
    if a.sum() <= radius:
        return y.copy()
    srt = np.sort(a)[::-1]
    css = np.cumsum(srt) - radius
    idx = np.arange(1, a.size + 1)
    rho = np.nonzero(srt - css / idx > 0)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return center + np.sign(u) * np.maximum(a - theta, 0.0)


def project_affine(x0: np.ndarray, basis: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Projection onto {x0 + basis @ t} for an orthonormal column basis."""
    d = y - x0
    return x0 + basis @ (basis.T @ d)


def ball_projector(space: NormSpec, center: np.ndarray, radius: float) -> Projector:
    """Euclidean projector onto the space-norm ball B[center, radius]."""
    c = np.asarray(center, dtype=float)
    r = float(radius)
    if space.kind is NormKind.L2:
        return lambda y: project_l2_ball(c, r, y)
    if space.kind is NormKind.LINF:
        half = np.full(space.dim, r)
        return lambda y: project_box(c, half, y)
    if space.kind is NormKind.WEIGHTED_SUP:
        half = r / space.scale
        return lambda y: project_box(c, half, y)
    return lambda y: project_l1_ball(c, r, y)


def dykstra(
    projectors: Sequence[Projector],
    y: np.ndarray,
    tol: float = 1e-12,
    maxiter: int = 10_000,
) -> tuple[np.ndarray, int, bool]:
    """Nearest point of the intersection of the given convex sets.

    Returns (point, sweeps, converged). A single set short-circuits to its
    own projector.
    """
    if len(projectors) == 1:
        return projectors[0](np.asarray(y, dtype=float)), 1, True
    x = np.asarray(y, dtype=float).copy()
    corr: List[np.ndarray] = [np.zeros_like(x) for _ in projectors]
    for sweep in range(1, maxiter + 1):
        x_prev = x.copy()
        for i, proj in enumerate(projectors):
            z = x + corr[i]
            xn = proj(z)
            corr[i] = z - xn
            x = xn
        if np.abs(x - x_prev).max() < tol:
            return x, sweep, True
    return x, maxiter, False


def closest_pair(
    project_a: Projector,
    project_b: Projector,
    start: np.ndarray,
    tol: float = 1e-12,
    maxiter: int = 10_000,
) -> tuple[np.ndarray, np.ndarray, int, bool]:
    """Alternating projections between two disjoint closed convex sets.

    Converges to points p in A and q in B realizing the Euclidean distance
    between the sets (both projectors must be exact). Returns
    (p, q, iterations, converged) where convergence means successive iterates
    moved less than ``tol``.
    """
    p = project_a(np.asarray(start, dtype=float))
    q = project_b(p)
    it = 0
    for it in range(1, maxiter + 1):
        p_new = project_a(q)
        q_new = project_b(p_new)
        move = max(np.abs(p_new - p).max(), np.abs(q_new - q).max())
        p, q = p_new, q_new
        if move < tol:
            return p, q, it, True
    return p, q, it, False
