"""Nonemptiness certificates for finite systems of norm balls.

The central quantity is the depth

    depth = min over x of max_i (||x - c_i|| - r_i),

which is <= 0 exactly when the closed balls share a point. For the
polyhedral norms the depth problem is a linear program solved by the in-repo
simplex. For the euclidean norm, feasibility of a ball system reduces to

    min over x of max_i (||x - c_i||^2 - s_i)  <=  0,

a max of quadratics with identical Hessians whose dual is a concave
quadratic over the probability simplex; that dual is solved exactly by
enumerating active subsets in increasing size order and checking the full
KKT system, which yields two-sided machine-precision bounds. The depth
itself then comes from bisection (one shot when all radii agree).

Certificates are honest: depths inside the band [feas_tol, 10 * feas_tol)
return Undetermined rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Union

import numpy as np

from . import simplex
from .projections import ball_projector, closest_pair
from .spaces import Functional, NormKind, NormSpec, affine_chart, norm

__all__ = [
    "Ball",
    "FeasibilityStatus",
    "FeasibilityCertificate",
    "EmptyDomainError",
    "intersect",
    "linear_extent",
    "duality_check",
]

_EXACT_MAX_BALLS = 16  # beyond this the euclidean dual falls back to Frank-Wolfe


class EmptyDomainError(ValueError):
    """Raised when an operation needs a nonempty ball intersection."""


class FeasibilityStatus(Enum):
    WITNESS = "Witness"
    EMPTY = "Empty"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True, eq=False)
class Ball:
    """Closed ball B[center, radius] in the ambient space norm."""

    center: np.ndarray
    radius: float

    def __post_init__(self) -> None:
        c = np.asarray(self.center, dtype=float).reshape(-1)
        c.setflags(write=False)
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", float(self.radius))
        if not (self.radius >= 0.0):
            raise ValueError("ball radius must be nonnegative")


@dataclass
class FeasibilityCertificate:
    status: FeasibilityStatus
    witness: Optional[np.ndarray]
    depth: float
    separator: Optional[Functional] = None
    iterations: int = 0


# ---------------------------------------------------------------------------
# linear-program rows shared with the center solvers
# ---------------------------------------------------------------------------


def _ball_system_rows(
    space: NormSpec,
    centers: np.ndarray,
    alphas: Optional[np.ndarray],
    betas: np.ndarray,
    include_t: bool,
):
    """Rows linearizing  ||x - c_i|| <= alpha_i * t + beta_i  for the
    polyhedral norms.

    Column layout: x (dim), then t when present, then the per-ball absolute
    value helpers used by the l1 norm. Returns (A_ub, b_ub, ncols, t_col).
    """
    d = space.dim
    n = centers.shape[0]
    t_col = d if include_t else -1
    n_aux = n * d if space.kind is NormKind.L1 else 0
    ncols = d + (1 if include_t else 0) + n_aux
    if space.kind is NormKind.L1:
        rows = []
        rhs = []
        u0 = d + (1 if include_t else 0)
        for i in range(n):
            for k in range(d):
                r1 = np.zeros(ncols)
                r1[k] = 1.0
                r1[u0 + i * d + k] = -1.0
                rows.append(r1)
                rhs.append(centers[i, k])
                r2 = np.zeros(ncols)
                r2[k] = -1.0
                r2[u0 + i * d + k] = -1.0
                rows.append(r2)
                rhs.append(-centers[i, k])
            rsum = np.zeros(ncols)
            rsum[u0 + i * d : u0 + (i + 1) * d] = 1.0
            if include_t:
                rsum[t_col] = -alphas[i]
            rows.append(rsum)
            rhs.append(betas[i])
        return np.array(rows), np.array(rhs), ncols, t_col

    scale = space.scale if space.kind is NormKind.WEIGHTED_SUP else np.ones(d)
    rows = np.zeros((2 * n * d, ncols))
    rhs = np.zeros(2 * n * d)
    idx = 0
    for i in range(n):
        for k in range(d):
            rows[idx, k] = scale[k]
            rows[idx + 1, k] = -scale[k]
            if include_t:
                rows[idx, t_col] = -alphas[i]
                rows[idx + 1, t_col] = -alphas[i]
            rhs[idx] = betas[i] + scale[k] * centers[i, k]
            rhs[idx + 1] = betas[i] - scale[k] * centers[i, k]
            idx += 2
    return rows, rhs, ncols, t_col


def _padded_equalities(space: NormSpec, ncols: int):
    if not space.constrained:
        return None, None
    A = space.constraint_matrix
    out = np.zeros((A.shape[0], ncols))
    out[:, : space.dim] = A
    return out, space.constraint_rhs.copy()


def _minimax_lp(space: NormSpec, centers: np.ndarray, alphas: np.ndarray, betas: np.ndarray):
    """min t subject to ||x - c_i|| <= alpha_i t + beta_i (polyhedral norms).

    Returns (t, x, iterations)."""
    A_ub, b_ub, ncols, t_col = _ball_system_rows(space, centers, alphas, betas, include_t=True)
    A_eq, b_eq = _padded_equalities(space, ncols)
    c = np.zeros(ncols)
    c[t_col] = 1.0
    res = simplex.solve_lp(c, A_ub, b_ub, A_eq, b_eq)
    return float(res.x[t_col]), res.x[: space.dim].copy(), res.iterations


# ---------------------------------------------------------------------------
# exact euclidean core: min_x max_i (||x - c_i||^2 - s_i)
# ---------------------------------------------------------------------------

_SUBSET_IDX: dict[int, list[np.ndarray]] = {}


def _subset_index_groups(n: int) -> list[np.ndarray]:
    """Index arrays of all nonempty subsets of range(n), grouped by size in
    lexicographic order within each group."""
    cached = _SUBSET_IDX.get(n)
    if cached is None:
        from itertools import combinations

        cached = [np.array(list(combinations(range(n), k)), dtype=int) for k in range(1, n + 1)]
        _SUBSET_IDX[n] = cached
    return cached


class _SqMax:
    """Exact solver for min_x max_i (||x - c_i||^2 - s_i) over a fixed center
    set, reusable across offset vectors.

    The dual is the concave quadratic q(lam) = lam.b - lam.G.lam over the
    probability simplex with b_i = ||c_i||^2 - s_i; the KKT systems per
    active subset depend only on the Gram matrix, so they are factored once
    at construction and each call is a batch of small matrix-vector products.
    Subsets are visited smallest-first, and the first one passing the full
    KKT test is the optimum.
    """

    def __init__(self, centers: np.ndarray):
        C = np.asarray(centers, dtype=float)
        self.C = C
        n = C.shape[0]
        self.n = n
        self.G = C @ C.T
        self.diag = np.einsum("ij,ij->i", C, C)
        self.scale = max(1.0, float(np.abs(self.G).max()))
        self.groups = []
        if n <= _EXACT_MAX_BALLS:
            for idx in _subset_index_groups(n):
                m, k = idx.shape
                mats = np.zeros((m, k + 1, k + 1))
                mats[:, :k, :k] = 2.0 * self.G[idx[:, :, None], idx[:, None, :]]
                mats[:, :k, k] = 1.0
                mats[:, k, :k] = 1.0
                invs = np.full_like(mats, np.nan)
                valid = np.zeros(m, dtype=bool)
                for t in range(m):
                    try:
                        invs[t] = np.linalg.inv(mats[t])
                        valid[t] = True
                    except np.linalg.LinAlgError:
                        pass
                self.groups.append((idx, invs, valid))

    def solve(self, offsets: np.ndarray):
        """Returns (lower, upper, x, lam) with lower <= optimum <= upper;
        upper is the objective at the returned x, which witnesses it."""
        s = np.asarray(offsets, dtype=float)
        b = self.diag - s
        n = self.n
        kkt_tol = 1e-9 * max(self.scale, float(np.abs(b).max()))
        best_q = -np.inf
        best_lam = None
        if not self.groups:
            best_q, best_lam = _pairwise_frank_wolfe(self.G, b, kkt_tol)
        for idx, invs, valid in self.groups:
            m, k = idx.shape
            rhs = np.concatenate([b[idx], np.ones((m, 1))], axis=1)
            sol = np.einsum("mij,mj->mi", invs, rhs)
            lam_S = sol[:, :k]
            mu = sol[:, k]
            feas = valid & (lam_S.min(axis=1) >= -1e-11)
            rows = np.nonzero(feas)[0]
            if rows.size == 0:
                continue
            lam_full = np.zeros((rows.size, n))
            np.put_along_axis(lam_full, idx[rows], np.clip(lam_S[rows], 0.0, None), axis=1)
            lam_full /= lam_full.sum(axis=1, keepdims=True)
            Glam = lam_full @ self.G
            q = lam_full @ b - np.einsum("mn,mn->m", lam_full, Glam)
            t = int(np.argmax(q))
            if q[t] > best_q:
                best_q, best_lam = float(q[t]), lam_full[t]
            kkt = np.all(b[None, :] - 2.0 * Glam <= mu[rows][:, None] + kkt_tol, axis=1)
            hits = np.nonzero(kkt)[0]
            if hits.size:
                h = int(hits[0])
                best_q = max(best_q, float(q[h]))
                best_lam = lam_full[h]
                break
        if best_lam is None:  # pragma: no cover - singletons always solve
            raise RuntimeError("no feasible dual candidate found")
        x = best_lam @ self.C
        upper = float((np.square(x - self.C).sum(axis=1) - s).max())
        return best_q, upper, x, best_lam


def _min_max_sq(centers: np.ndarray, offsets: np.ndarray):
    """One-shot form of _SqMax for single offset vectors."""
    return _SqMax(centers).solve(offsets)


def _pairwise_frank_wolfe(G, b, tol, maxiter=100_000):
    # large systems: linearly convergent pairwise steps on the dual simplex
    n = b.size
    lam = np.full(n, 1.0 / n)
    q = float(lam @ b - lam @ G @ lam)
    for _ in range(maxiter):
        grad = b - 2.0 * (G @ lam)
        i_fw = int(np.argmax(grad))
        active = np.nonzero(lam > 1e-15)[0]
        i_aw = int(active[np.argmin(grad[active])])
        gap = grad[i_fw] - float(grad @ lam)
        if gap <= tol * 1e-3:
            break
        slope = grad[i_fw] - grad[i_aw]
        if slope <= 0:
            break
        curv = 2.0 * (G[i_fw, i_fw] - 2.0 * G[i_fw, i_aw] + G[i_aw, i_aw])
        step = lam[i_aw] if curv <= 0 else min(lam[i_aw], slope / curv)
        lam[i_fw] += step
        lam[i_aw] -= step
        q = float(lam @ b - lam @ G @ lam)
    return q, lam


def _chart_reduce(space: NormSpec, centers: np.ndarray):
    """Map euclidean ball data into subspace coordinates.

    Returns (chart_centers, extra) with ||x0 + N y - c_i||^2 =
    ||y - chart_i||^2 + extra_i.
    """
    if not space.constrained:
        return centers, np.zeros(centers.shape[0]), None, None
    x0, basis = affine_chart(space)
    diff = centers - x0
    chart = diff @ basis
    extra = np.einsum("ij,ij->i", diff, diff) - np.einsum("ij,ij->i", chart, chart)
    return chart, np.maximum(extra, 0.0), x0, basis


def _l2_depth(space: NormSpec, centers: np.ndarray, radii: np.ndarray):
    """Two-sided depth bracket plus a witness for euclidean ball systems."""
    chart, extra, x0, basis = _chart_reduce(space, centers)

    def lift(y):
        return y if basis is None else x0 + basis @ y

    system = _SqMax(chart)
    if float(radii.max() - radii.min()) == 0.0:
        r = float(radii[0])
        lb, ub, y, _ = system.solve(-extra)
        lo = np.sqrt(max(lb, 0.0)) - r
        hi = np.sqrt(max(ub, 0.0)) - r
        return lo, hi, lift(y), 1

    scale = max(1.0, float(np.abs(centers).max()), float(radii.max()))
    # centroid gives a guaranteed-feasible upper end for the bracket
    y_bar = chart.mean(axis=0)
    hi = float(np.max(np.sqrt(np.square(y_bar - chart).sum(axis=1) + extra) - radii))
    lo = -float(radii.min()) - 1.0
    witness = lift(y_bar)
    iters = 0

    def feasible(t):
        if (radii + t).min() < 0.0:
            return False, None
        offs = np.square(radii + t) - extra
        _, ub, y, _ = system.solve(offs)
        return ub <= 0.0, y

    for _ in range(120):
        iters += 1
        if hi - lo <= 1e-14 * scale:
            break
        mid = 0.5 * (lo + hi)
        ok, y = feasible(mid)
        if ok:
            hi = mid
            witness = lift(y)
        else:
            lo = mid
    return lo, hi, witness, iters


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def _check_balls(space: NormSpec, balls: Sequence[Ball]) -> np.ndarray:
    if len(balls) == 0:
        raise ValueError("at least one ball is required")
    centers = np.array([space.check_vector(b.center) for b in balls])
    return centers


def intersect(space: NormSpec, balls: Sequence[Ball], feas_tol: float = 1e-9) -> FeasibilityCertificate:
    """Decide whether the closed balls share a point.

    Witness carries a point feasible within feas_tol; Empty is only declared
    when the certified depth is at least 10 * feas_tol.
    """
    if not feas_tol > 0:
        raise ValueError("feas_tol must be positive")
    centers = _check_balls(space, balls)
    radii = np.array([b.radius for b in balls], dtype=float)

    if space.kind is NormKind.L2:
        depth_lo, depth_hi, witness, iters = _l2_depth(space, centers, radii)
        depth_est = 0.5 * (depth_lo + depth_hi)
    else:
        t, witness, iters = _minimax_lp(space, centers, np.ones(len(balls)), radii)
        depth_lo = depth_hi = depth_est = t

    witness_value = max(norm(space, witness - c) - r for c, r in zip(centers, radii))

    if witness_value <= feas_tol:
        return FeasibilityCertificate(FeasibilityStatus.WITNESS, witness, float(witness_value), None, iters)
    if depth_lo >= 10.0 * feas_tol:
        separator = _two_ball_separator(space, balls) if len(balls) == 2 else None
        return FeasibilityCertificate(FeasibilityStatus.EMPTY, None, float(depth_est), separator, iters)
    return FeasibilityCertificate(FeasibilityStatus.UNDETERMINED, None, float(depth_est), None, iters)


def _two_ball_separator(space: NormSpec, balls: Sequence[Ball]) -> Optional[Functional]:
    pa = ball_projector(space, balls[0].center, balls[0].radius)
    pb = ball_projector(space, balls[1].center, balls[1].radius)
    p, q, _, _ = closest_pair(pa, pb, balls[1].center)
    raw = p - q
    if np.linalg.norm(raw) <= 1e-14 * (1.0 + np.linalg.norm(balls[0].center - balls[1].center)):
        return None
    return Functional.for_space(space, raw)


def linear_extent(
    space: NormSpec,
    balls: Sequence[Ball],
    g: Union[Functional, np.ndarray, Sequence[float]],
    direction: str = "min",
) -> float:
    """Optimal value of <g, x> over the (nonempty) intersection of the balls.

    For euclidean systems the returned value is a certified bound on the
    safe side: a lower bound when minimizing, an upper bound when
    maximizing. The gap is at machine scale for well-separated systems.
    """
    if direction not in ("min", "max"):
        raise ValueError("direction must be 'min' or 'max'")
    coeffs = g.coefficients if isinstance(g, Functional) else np.asarray(g, dtype=float)
    coeffs = space.check_vector(coeffs)
    cert = intersect(space, balls)
    if cert.status is not FeasibilityStatus.WITNESS:
        raise EmptyDomainError("linear_extent requires a nonempty ball intersection")
    centers = _check_balls(space, balls)
    radii = np.array([b.radius for b in balls], dtype=float)

    if space.kind is not NormKind.L2:
        A_ub, b_ub, ncols, _ = _ball_system_rows(space, centers, None, radii, include_t=False)
        A_eq, b_eq = _padded_equalities(space, ncols)
        c = np.zeros(ncols)
        c[: space.dim] = coeffs if direction == "min" else -coeffs
        res = simplex.solve_lp(c, A_ub, b_ub, A_eq, b_eq)
        return float(res.fun) if direction == "min" else float(-res.fun)

    gv = coeffs if direction == "min" else -coeffs
    val = _l2_linear_min(space, gv, centers, radii)
    return float(val) if direction == "min" else float(-val)


def _l2_linear_min(space: NormSpec, g: np.ndarray, centers: np.ndarray, radii: np.ndarray) -> float:
    """Certified lower bound on min <g, x> over an intersection of
    euclidean balls, by projected-Newton ascent on the Lagrangian dual."""
    chart, extra, x0, basis = _chart_reduce(space, centers)
    const = 0.0
    if basis is not None:
        const = float(g @ x0)
        g = basis.T @ g
    r2 = np.square(radii) - extra
    if np.any(r2 < 0):
        # a ball missing the subspace entirely: nonempty precondition already
        # checked, so clip defensively
        r2 = np.maximum(r2, 0.0)
    n = chart.shape[0]
    gnorm = float(np.linalg.norm(g))
    if gnorm == 0.0:
        return const
    radii_eff = np.sqrt(r2)

    # single ball: support function, exact
    if n == 1:
        return const + float(g @ chart[0]) - gnorm * float(radii_eff[0])

    support = float(np.max(chart @ g - gnorm * radii_eff))
    mu = np.full(n, gnorm / (2.0 * n * max(float(radii_eff.max()), 1e-9)))
    best = support

    def dual_value(m):
        M = m.sum()
        if M <= 0.0:
            return -np.inf, None, None
        xbar = (m @ chart - 0.5 * g) / M
        diffs = xbar - chart
        grad = np.einsum("ij,ij->i", diffs, diffs) - r2
        val = float(g @ xbar + m @ grad)
        return val, grad, diffs

    val, grad, diffs = dual_value(mu)
    best = max(best, val)
    for _ in range(200):
        M = mu.sum()
        free = (mu > 0.0) | (grad > 0.0)
        if not free.any():
            break
        opt_err = max(
            float(np.abs(grad[mu > 0.0]).max(initial=0.0)),
            float(grad[mu <= 0.0].max(initial=-np.inf)),
        )
        if opt_err <= 1e-14 * (1.0 + gnorm):
            break
        D = diffs[free]
        H = D @ D.T
        ridge = 1e-13 * (1.0 + float(np.trace(H)))
        try:
            step = np.linalg.solve(H + ridge * np.eye(H.shape[0]), 0.5 * M * grad[free])
        except np.linalg.LinAlgError:
            step = grad[free]
        alpha = 1.0
        improved = False
        for _ in range(40):
            cand = mu.copy()
            cand[free] = np.maximum(mu[free] + alpha * step, 0.0)
            cval, cgrad, cdiffs = dual_value(cand)
            if cval > val:
                mu, val, grad, diffs = cand, cval, cgrad, cdiffs
                improved = True
                break
            alpha *= 0.5
        best = max(best, val)
        if not improved:
            break
    return const + best


def duality_check(F, tol: float = 1e-9) -> bool:
    """Cross-check that the Chebyshev radius matches ball intersectability:
    balls of radius rad + tol around the points meet, balls of radius
    rad - 10 * tol do not (skipped when rad is degenerate)."""
    from .centers import chebyshev_center  # local import: centers builds on this module

    if not np.allclose(F.weights, 1.0):
        raise ValueError("duality_check requires unit weights")
    rad = chebyshev_center(F, tol=min(tol, 1e-9)).radius
    space = F.space
    grow = [Ball(p, rad + tol) for p in F.points]
    cert_hi = intersect(space, grow, feas_tol=tol)
    if cert_hi.status is not FeasibilityStatus.WITNESS:
        return False
    if rad - 10.0 * tol <= 0.0:
        return True
    shrink = [Ball(p, rad - 10.0 * tol) for p in F.points]
    cert_lo = intersect(space, shrink, feas_tol=tol)
    return cert_lo.status in (FeasibilityStatus.EMPTY, FeasibilityStatus.UNDETERMINED)
