"""Best n-point nets (continuous k-center) for finite point sets.

The exact method enumerates set partitions into at most n nonempty blocks
via restricted growth strings and places each block's unweighted Chebyshev
center; replacing a net point by its block's center never increases the
covering radius, and conversely any net induces a partition by nearest
assignment, so the best partition value equals the best achievable covering
radius. The heuristic is farthest-first seeding followed by center/assign
alternation and carries the classical factor-2 guarantee, which only uses
the triangle inequality and therefore holds in every built-in norm.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Sequence

import numpy as np

from .centers import PointSet, chebyshev_center
from .spaces import norm

__all__ = [
    "BudgetExceeded",
    "NNetResult",
    "covering_radius",
    "assign_to_nets",
    "best_nnet_exact",
    "best_nnet_heuristic",
]

_MAX_POINTS_EXACT = 14
_MAX_BLOCKS_EXACT = 4
_CENTER_TOL = 1e-9


class BudgetExceeded(ValueError):
    """Instance too large for exact partition enumeration."""


@dataclass
class NNetResult:
    nets: List[np.ndarray]
    covering_radius: float
    assignment: List[int]
    optimal: bool


def covering_radius(F: PointSet, nets: Sequence[np.ndarray]) -> float:
    """max over the point set of the distance to the nearest net point."""
    if len(nets) == 0:
        raise ValueError("nets must be nonempty")
    worst = 0.0
    for p in F.points:
        worst = max(worst, min(norm(F.space, p - y) for y in nets))
    return worst


def assign_to_nets(F: PointSet, nets: Sequence[np.ndarray]) -> List[int]:
    """Index of the nearest net point for every point; ties pick the lowest
    net index."""
    out = []
    for p in F.points:
        dists = [norm(F.space, p - y) for y in nets]
        out.append(int(np.argmin(dists)))
    return out


def _partitions(n_items: int, max_blocks: int) -> Iterator[List[List[int]]]:
    # restricted growth strings: a[0] = 0, a[i] <= max(a[:i]) + 1, capped width
    a = [0] * n_items

    def rec(i: int, m: int):
        if i == n_items:
            blocks: List[List[int]] = [[] for _ in range(m)]
            for idx, lbl in enumerate(a):
                blocks[lbl].append(idx)
            yield blocks
            return
        for v in range(min(m + 1, max_blocks)):
            a[i] = v
            yield from rec(i + 1, max(m, v + 1))

    yield from rec(1, 1)


def _block_solver(F: PointSet):
    cache: dict[tuple, tuple[float, np.ndarray]] = {}

    def solve(block: Sequence[int]) -> tuple[float, np.ndarray]:
        key = tuple(block)
        hit = cache.get(key)
        if hit is None:
            sub = PointSet(F.space, F.points[list(block)])
            res = chebyshev_center(sub, tol=_CENTER_TOL)
            hit = (res.radius, res.center)
            cache[key] = hit
        return hit

    return solve


def best_nnet_exact(F: PointSet, n: int) -> NNetResult:
    """Optimal n-net by full partition enumeration (|F| <= 14, n <= 4).

    Fewer than n blocks are allowed since net points may be redundant; ties
    between partitions go to the first one in enumeration order.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if F.n > _MAX_POINTS_EXACT or n > _MAX_BLOCKS_EXACT:
        raise BudgetExceeded(
            f"exact enumeration supports |F| <= {_MAX_POINTS_EXACT} and n <= {_MAX_BLOCKS_EXACT}"
        )
    solve = _block_solver(F)
    best_val = np.inf
    best_nets: List[np.ndarray] = []
    for blocks in _partitions(F.n, n):
        val = 0.0
        for block in blocks:
            val = max(val, solve(block)[0])
            if val >= best_val:
                break
        if val < best_val:
            best_val = val
            best_nets = [solve(block)[1] for block in blocks]
    radius = covering_radius(F, best_nets)  # independent recomputation
    return NNetResult(
        nets=best_nets,
        covering_radius=radius,
        assignment=assign_to_nets(F, best_nets),
        optimal=True,
    )


def best_nnet_heuristic(F: PointSet, n: int, tol: float = 1e-9) -> NNetResult:
    """Farthest-first seeding plus center/assign alternation.

    Never worse than twice the optimum (plus tol); each round recomputes the
    unweighted Chebyshev center of every nonempty block, which cannot
    increase the covering radius.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    seeds = [0]
    dists = np.array([norm(F.space, p - F.points[0]) for p in F.points])
    while len(seeds) < min(n, F.n):
        k = int(np.argmax(dists))
        if dists[k] == 0.0:
            break
        seeds.append(k)
        dists = np.minimum(dists, [norm(F.space, p - F.points[k]) for p in F.points])
    nets = [F.points[k].copy() for k in seeds]

    radius = covering_radius(F, nets)
    for _ in range(100):
        labels = assign_to_nets(F, nets)
        for j in range(len(nets)):
            members = [i for i, lbl in enumerate(labels) if lbl == j]
            if members:
                sub = PointSet(F.space, F.points[members])
                nets[j] = chebyshev_center(sub, tol=_CENTER_TOL).center
        new_radius = covering_radius(F, nets)
        if radius - new_radius < tol:
            radius = min(radius, new_radius)
            break
        radius = new_radius
    return NNetResult(
        nets=nets,
        covering_radius=covering_radius(F, nets),
        assignment=assign_to_nets(F, nets),
        optimal=False,
    )
