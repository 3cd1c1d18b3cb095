"""Chebyshev-type centers of weighted finite point sets.

Three aggregation regimes share one entry point:

* max of weighted distances (the classical / weighted center): linear
  programming for the polyhedral norms, and for the euclidean norm either a
  single exact max-of-quadratics solve (uniform weights) or bisection on the
  radius with exact feasibility tests (general weights);
* power sums (sum-type objectives such as the weighted Fermat point):
  subgradient descent plus a direct-search polish, certified by the best
  available dual or two-point bound;
* user-supplied aggregation callbacks: multistart direct search, always
  labeled heuristic.

Solvers only ever report a center together with the radius re-evaluated at
that center, so the radius is achievable by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence

import numpy as np

from .feasibility import _chart_reduce, _minimax_lp, _SqMax
from .spaces import NormKind, NormSpec, affine_chart, in_subspace, norm

__all__ = [
    "AggregatorKind",
    "Aggregator",
    "max_weighted",
    "power_sum",
    "oracle_aggregator",
    "PointSet",
    "Method",
    "CenterResult",
    "eval_radius",
    "pairwise_lower_bound",
    "chebyshev_center",
]

_ITER_CAP = 100_000
_RNG_SEED = 1729  # fixed so repeated solves are bit-identical


class AggregatorKind(Enum):
    MAX_WEIGHTED = "MaxWeighted"
    POWER_SUM = "PowerSum"
    ORACLE = "Oracle"


@dataclass(frozen=True, eq=False)
class Aggregator:
    """Monotone coercive aggregation of the distance vector.

    PowerSum(q) means (sum_i w_i t_i^q)^(1/q) with q >= 1. Oracle wraps a
    user callback; its monotone/coercive promise is declared, not enforced.
    """

    kind: AggregatorKind
    q: float = float("nan")
    evaluate: Optional[Callable[[np.ndarray], float]] = None
    monotone_coercive: bool = True

    def __post_init__(self) -> None:
        if self.kind is AggregatorKind.POWER_SUM:
            if not (self.q >= 1.0):
                raise ValueError("PowerSum exponent must satisfy q >= 1")
        if self.kind is AggregatorKind.ORACLE and self.evaluate is None:
            raise ValueError("Oracle aggregator requires an evaluation callback")

    def combine(self, values: np.ndarray, weights: np.ndarray) -> float:
        if self.kind is AggregatorKind.MAX_WEIGHTED:
            return float((weights * values).max())
        if self.kind is AggregatorKind.POWER_SUM:
            return float((weights * np.power(values, self.q)).sum() ** (1.0 / self.q))
        out = float(self.evaluate(np.asarray(values, dtype=float)))
        if not math.isfinite(out) or out < 0.0:
            raise ValueError("oracle aggregator returned a negative or non-finite value")
        return out


def max_weighted() -> Aggregator:
    return Aggregator(AggregatorKind.MAX_WEIGHTED)


def power_sum(q: float) -> Aggregator:
    return Aggregator(AggregatorKind.POWER_SUM, q=float(q))


def oracle_aggregator(fn: Callable[[np.ndarray], float], monotone_coercive: bool = True) -> Aggregator:
    return Aggregator(AggregatorKind.ORACLE, evaluate=fn, monotone_coercive=monotone_coercive)


@dataclass(frozen=True, eq=False)
class PointSet:
    """A finite point set with strictly positive weights in an ambient space.

    Points must satisfy the space's affine constraints (tolerance 1e-9);
    duplicates are allowed and kept, since their weights may differ.
    """

    space: NormSpec
    points: np.ndarray
    weights: np.ndarray = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        if pts.shape[0] < 1 or pts.shape[1] != self.space.dim:
            raise ValueError(f"points must form an (n, {self.space.dim}) array with n >= 1")
        w = np.ones(pts.shape[0]) if self.weights is None else np.asarray(self.weights, dtype=float).reshape(-1)
        if w.shape != (pts.shape[0],):
            raise ValueError(f"weights has length {w.size}, expected {pts.shape[0]}")
        if not np.all(np.isfinite(w)) or not np.all(w > 0.0):
            raise ValueError("weights must be finite and strictly positive")
        if self.space.constrained:
            for i, p in enumerate(pts):
                if not in_subspace(self.space, p, 1e-9):
                    raise ValueError(f"point {i} violates the affine constraints")
        pts.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def centroid(self) -> np.ndarray:
        return self.points.mean(axis=0)


class Method(Enum):
    LP = "LP"
    SUBGRADIENT = "Subgradient"
    MULTISTART = "MultiStart"
    BISECTION = "Bisection"


@dataclass
class CenterResult:
    center: np.ndarray
    radius: float
    lower_bound: float
    gap: float
    iterations: int
    method: Method
    certified: bool


def eval_radius(F: PointSet, x, agg: Optional[Aggregator] = None) -> float:
    """Aggregated distance from x to the point set. x is not required to
    satisfy the space constraints; only the search is constrained."""
    agg = agg or max_weighted()
    v = F.space.check_vector(x)
    dists = np.array([norm(F.space, v - p) for p in F.points])
    return agg.combine(dists, F.weights)


def pairwise_lower_bound(F: PointSet) -> float:
    """max over pairs of ||a_i - a_j|| / (1/w_i + 1/w_j): from the triangle
    inequality this can never exceed the weighted-max radius."""
    best = 0.0
    for i in range(F.n):
        for j in range(i + 1, F.n):
            d = norm(F.space, F.points[i] - F.points[j])
            best = max(best, d / (1.0 / F.weights[i] + 1.0 / F.weights[j]))
    return best


def _result(F: PointSet, agg: Aggregator, center, lower, iters, method, tol) -> CenterResult:
    radius = eval_radius(F, center, agg)
    lower = min(lower, radius)
    gap = radius - lower
    return CenterResult(
        center=np.asarray(center, dtype=float),
        radius=radius,
        lower_bound=lower,
        gap=gap,
        iterations=int(iters),
        method=method,
        certified=bool(gap <= tol),
    )


def chebyshev_center(F: PointSet, agg: Optional[Aggregator] = None, tol: float = 1e-9) -> CenterResult:
    """Minimize the aggregated distance over the (possibly constrained)
    space. See the module docstring for the per-regime strategies."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    agg = agg or max_weighted()
    if agg.kind is AggregatorKind.MAX_WEIGHTED:
        return _solve_max_weighted(F, agg, tol)
    if agg.kind is AggregatorKind.POWER_SUM:
        return _solve_power_sum(F, agg, tol)
    return _solve_oracle(F, agg, tol)


# ---------------------------------------------------------------------------
# weighted-max solvers
# ---------------------------------------------------------------------------


def _solve_max_weighted(F: PointSet, agg: Aggregator, tol: float) -> CenterResult:
    if F.space.kind is not NormKind.L2:
        t, x, iters = _minimax_lp(F.space, F.points, 1.0 / F.weights, np.zeros(F.n))
        return _result(F, agg, x, t, iters, Method.LP, tol)

    chart, extra, x0, basis = _chart_reduce(F.space, F.points)

    def lift(y):
        return y if basis is None else x0 + basis @ y

    w = F.weights
    system = _SqMax(chart)
    if float(w.max() - w.min()) == 0.0:
        lb, _, y, _ = system.solve(-extra)
        lower = float(w[0]) * math.sqrt(max(lb, 0.0))
        return _result(F, agg, lift(y), lower, 1, Method.BISECTION, tol)

    lo = pairwise_lower_bound(F)
    hi = eval_radius(F, F.centroid, agg)
    witness = F.centroid
    iters = 0

    def feasible(r):
        offs = np.square(r / w) - extra
        _, ub, y, _ = system.solve(offs)
        return ub <= 0.0, lift(y)

    ok, y = feasible(hi)
    while not ok and iters < 60:  # numerical guard; the centroid value is feasible in exact arithmetic
        hi *= 1.0 + 1e-12 + 0.1 * 2.0**iters
        ok, y = feasible(hi)
        iters += 1
    if ok:
        witness = y
    while hi - lo > 0.5 * tol and iters < _ITER_CAP:
        iters += 1
        mid = 0.5 * (lo + hi)
        ok, y = feasible(mid)
        if ok:
            hi = mid
            witness = y
        else:
            lo = mid
    return _result(F, agg, witness, lo, iters, Method.BISECTION, tol)


# ---------------------------------------------------------------------------
# power-sum solver: subgradient descent + direct-search polish
# ---------------------------------------------------------------------------


def _norm_subgradient(space: NormSpec, v: np.ndarray) -> np.ndarray:
    if space.kind is NormKind.L2:
        nv = np.linalg.norm(v)
        return v / nv if nv > 0 else np.zeros_like(v)
    if space.kind is NormKind.L1:
        return np.sign(v)
    if space.kind is NormKind.LINF:
        k = int(np.argmax(np.abs(v)))
        g = np.zeros_like(v)
        g[k] = np.sign(v[k]) if v[k] != 0 else 0.0
        return g
    k = int(np.argmax(space.scale * np.abs(v)))
    g = np.zeros_like(v)
    g[k] = space.scale[k] * (np.sign(v[k]) if v[k] != 0 else 0.0)
    return g


def _power_sum_subgradient(F: PointSet, q: float, x: np.ndarray) -> np.ndarray:
    dists = np.array([norm(F.space, x - p) for p in F.points])
    total = float((F.weights * np.power(dists, q)).sum() ** (1.0 / q))
    if total == 0.0:
        return np.zeros(F.space.dim)
    g = np.zeros(F.space.dim)
    for i in range(F.n):
        if dists[i] == 0.0 and q > 1.0:
            continue
        coeff = F.weights[i] * dists[i] ** (q - 1.0) * total ** (1.0 - q)
        g += coeff * _norm_subgradient(F.space, x - F.points[i])
    return g


def _power_sum_pair_bound(F: PointSet, q: float) -> float:
    """Exact optimum of every two-point subproblem; a valid lower bound since
    dropping nonnegative summands can only shrink the objective."""
    best = 0.0
    for i in range(F.n):
        for j in range(i + 1, F.n):
            d = norm(F.space, F.points[i] - F.points[j])
            wi, wj = float(F.weights[i]), float(F.weights[j])
            if q == 1.0:
                val = d * min(wi, wj)
            else:
                s = (wj / wi) ** (1.0 / (q - 1.0))
                a = s / (1.0 + s)
                val = d * (wi * a**q + wj * (1.0 - a) ** q) ** (1.0 / q)
            best = max(best, val)
    return best


def _weber_dual_bound(F: PointSet, x: np.ndarray) -> float:
    """Certified lower bound for the euclidean sum objective, repaired from
    the gradient directions at x. Only valid for q = 1, l2, unconstrained."""
    diffs = x - F.points
    dists = np.linalg.norm(diffs, axis=1)
    scale = 1.0 + float(np.abs(F.points).max())
    if dists.min() < 1e-12 * scale:
        return -np.inf
    u = (F.weights / dists)[:, None] * diffs  # pieces of the objective gradient
    u -= u.mean(axis=0)
    norms = np.linalg.norm(u, axis=1)
    with np.errstate(divide="ignore"):
        gamma = min(1.0, float(np.min(np.where(norms > 0, F.weights / np.maximum(norms, 1e-300), np.inf))))
    return float(-gamma * np.einsum("ij,ij->", u, F.points))


def _nelder_mead(f, x0: np.ndarray, step: float, tol: float, max_evals: int):
    d = x0.size
    if d == 0:
        return x0.copy(), f(x0), 1
    pts = [x0.copy()]
    for i in range(d):
        p = x0.copy()
        p[i] += step
        pts.append(p)
    vals = [f(p) for p in pts]
    evals = d + 1
    while evals < max_evals:
        order = np.argsort(vals, kind="stable")
        pts = [pts[i] for i in order]
        vals = [vals[i] for i in order]
        spread = max(np.abs(p - pts[0]).max() for p in pts[1:])
        if vals[-1] - vals[0] <= tol and spread <= tol:
            break
        centroid = np.mean(pts[:-1], axis=0)
        xr = centroid + (centroid - pts[-1])
        fr = f(xr)
        evals += 1
        if fr < vals[0]:
            xe = centroid + 2.0 * (centroid - pts[-1])
            fe = f(xe)
            evals += 1
            if fe < fr:
                pts[-1], vals[-1] = xe, fe
            else:
                pts[-1], vals[-1] = xr, fr
        elif fr < vals[-2]:
            pts[-1], vals[-1] = xr, fr
        else:
            xc = centroid + 0.5 * (pts[-1] - centroid)
            fc = f(xc)
            evals += 1
            if fc < vals[-1]:
                pts[-1], vals[-1] = xc, fc
            else:
                for i in range(1, d + 1):
                    pts[i] = pts[0] + 0.5 * (pts[i] - pts[0])
                    vals[i] = f(pts[i])
                evals += d
    k = int(np.argmin(vals))
    return pts[k], vals[k], evals


def _spread(F: PointSet) -> float:
    lo = F.points.min(axis=0)
    hi = F.points.max(axis=0)
    return float(np.max(hi - lo))


def _starts(F: PointSet, count: int) -> list[np.ndarray]:
    rng = np.random.default_rng(_RNG_SEED)
    starts = [F.centroid] + [p.copy() for p in F.points]
    span = max(_spread(F), 1.0)
    while len(starts) < count:
        starts.append(F.centroid + span * rng.uniform(-0.5, 0.5, size=F.space.dim))
    return starts


def _solve_power_sum(F: PointSet, agg: Aggregator, tol: float) -> CenterResult:
    q = agg.q
    x0c, basis = (affine_chart(F.space)) if F.space.constrained else (None, None)

    def project(x):
        if basis is None:
            return x
        return x0c + basis @ (basis.T @ (x - x0c))

    span = max(_spread(F), 1e-9)
    best_x = None
    best_val = np.inf
    total_iters = 0
    sub_iters = min(1500, _ITER_CAP)
    for start in _starts(F, 2 * F.space.dim + 1):
        x = project(np.asarray(start, dtype=float))
        bx, bv = x, eval_radius(F, x, agg)
        for k in range(1, sub_iters + 1):
            g = _power_sum_subgradient(F, q, x)
            if basis is not None:
                g = basis @ (basis.T @ g)
            gn = float(np.linalg.norm(g))
            if gn == 0.0:
                break
            x = project(x - (span / math.sqrt(k)) * g / gn)
            v = eval_radius(F, x, agg)
            if v < bv:
                bx, bv = x, v
            total_iters += 1
        if bv < best_val:
            best_x, best_val = bx, bv

    # direct-search polish in subspace coordinates
    if basis is None:
        y0 = best_x
        lift = lambda y: y
    else:
        y0 = basis.T @ (best_x - x0c)
        lift = lambda y: x0c + basis @ y
    y_opt, _, evals = _nelder_mead(
        lambda y: eval_radius(F, lift(y), agg), np.asarray(y0, dtype=float), 0.05 * span, 1e-13 * (1 + span), 600 * max(1, y0.size)
    )
    total_iters += evals
    center = lift(y_opt)

    lower = _power_sum_pair_bound(F, q)
    if q == 1.0 and F.space.kind is NormKind.L2 and not F.space.constrained:
        lower = max(lower, _weber_dual_bound(F, center))
    return _result(F, agg, center, lower, total_iters, Method.SUBGRADIENT, tol)


def _solve_oracle(F: PointSet, agg: Aggregator, tol: float) -> CenterResult:
    x0c, basis = (affine_chart(F.space)) if F.space.constrained else (None, None)
    if basis is None:
        lift = lambda y: y
        drop = lambda x: x
    else:
        lift = lambda y: x0c + basis @ y
        drop = lambda x: basis.T @ (x - x0c)
    span = max(_spread(F), 1e-9)
    best = None
    evals = 0
    for start in _starts(F, 2 * F.space.dim + 1):
        y, v, ne = _nelder_mead(
            lambda y: eval_radius(F, lift(y), agg),
            np.asarray(drop(np.asarray(start, dtype=float)), dtype=float),
            0.1 * span,
            1e-12 * (1 + span),
            400 * max(1, F.space.dim),
        )
        evals += ne
        if best is None or v < best[1]:
            best = (y, v)
    center = lift(best[0])
    return _result(F, agg, center, 0.0, evals, Method.MULTISTART, tol)
