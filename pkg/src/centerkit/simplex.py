"""Dense two-phase simplex for the small linear programs used by the solvers.

Every LP in this package is desk scale (a few hundred variables at most), so
a dense tableau is the simplest thing that is also easy to trust: Dantzig
pricing for speed, with a switch to Bland's rule after a fixed number of
pivots to rule out cycling. All variables are free; nonnegativity is encoded
by the callers through the usual plus/minus split done here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

__all__ = ["LPError", "LPInfeasible", "LPUnbounded", "LPResult", "solve_lp"]

_RC_TOL = 1e-10    # reduced-cost threshold
_PIV_TOL = 1e-10   # smallest acceptable pivot magnitude
_MAXITER = 50_000


class LPError(Exception):
    pass


class LPInfeasible(LPError):
    pass


class LPUnbounded(LPError):
    pass


@dataclass
class LPResult:
    x: np.ndarray
    fun: float
    iterations: int


def _pivot(tab: np.ndarray, obj: np.ndarray, row: int, col: int) -> None:
    tab[row] /= tab[row, col]
    piv_row = tab[row]
    factors = tab[:, col].copy()
    factors[row] = 0.0
    tab -= np.outer(factors, piv_row)
    obj -= obj[col] * piv_row


def _run_phase(tab, obj, basis, allowed, start_iter, maxiter):
    """Pivot until no reduced cost is meaningfully negative.

    ``allowed`` masks the columns that may enter. Returns the iteration
    counter; raises LPUnbounded when a ratio test finds no row.
    """
    m = tab.shape[0]
    it = start_iter
    bland_after = start_iter + 3 * (m + tab.shape[1])
    while True:
        rc = obj[:-1]
        if it < bland_after:
            cand = np.where(allowed, rc, np.inf)
            col = int(np.argmin(cand))
            if cand[col] >= -_RC_TOL:
                return it
        else:
            neg = np.nonzero(allowed & (rc < -_RC_TOL))[0]
            if neg.size == 0:
                return it
            col = int(neg[0])

        colvals = tab[:, col]
        ratios = np.full(m, np.inf)
        ok = colvals > _PIV_TOL
        ratios[ok] = tab[ok, -1] / colvals[ok]
        if not ok.any():
            raise LPUnbounded("objective unbounded below")
        best = ratios.min()
        # smallest ratio, ties broken by the smallest basic variable index
        tied = np.nonzero(ratios <= best + 1e-12 * (1.0 + abs(best)))[0]
        row = int(tied[np.argmin(np.asarray(basis)[tied])])
        _pivot(tab, obj, row, col)
        basis[row] = col
        it += 1
        if it - start_iter > maxiter:
            raise LPError("simplex iteration limit exceeded")


def solve_lp(
    c,
    A_ub: Optional[np.ndarray] = None,
    b_ub: Optional[np.ndarray] = None,
    A_eq: Optional[np.ndarray] = None,
    b_eq: Optional[np.ndarray] = None,
    maxiter: int = _MAXITER,
) -> LPResult:
    """Minimize ``c @ x`` over ``A_ub @ x <= b_ub`` and ``A_eq @ x = b_eq``
    with all variables free.
    """
    c = np.asarray(c, dtype=float).reshape(-1)
    nv = c.size
    if A_ub is None:
        A_ub = np.zeros((0, nv))
        b_ub = np.zeros(0)
    else:
        A_ub = np.atleast_2d(np.asarray(A_ub, dtype=float))
        b_ub = np.asarray(b_ub, dtype=float).reshape(-1)
    if A_eq is None:
        A_eq = np.zeros((0, nv))
        b_eq = np.zeros(0)
    else:
        A_eq = np.atleast_2d(np.asarray(A_eq, dtype=float))
        b_eq = np.asarray(b_eq, dtype=float).reshape(-1)
    m_eq, m_ub = A_eq.shape[0], A_ub.shape[0]
    m = m_eq + m_ub

    # standard-form columns: [x+ | x- | slacks]
    n_std = 2 * nv + m_ub
    A = np.zeros((m, n_std))
    A[:m_eq, :nv] = A_eq
    A[:m_eq, nv : 2 * nv] = -A_eq
    A[m_eq:, :nv] = A_ub
    A[m_eq:, nv : 2 * nv] = -A_ub
    for i in range(m_ub):
        A[m_eq + i, 2 * nv + i] = 1.0
    b = np.concatenate([b_eq, b_ub])

    # row equilibration; keeps every pivot decision on a O(1) scale
    row_scale = np.maximum(np.abs(A).max(axis=1, initial=0.0), np.abs(b))
    row_scale[row_scale < 1e-12] = 1.0
    A /= row_scale[:, None]
    b = b / row_scale

    flip = b < 0
    A[flip] *= -1.0
    b = np.where(flip, -b, b)

    # initial basis: unflipped inequality rows keep their slack, the rest get
    # an artificial column
    basis = [-1] * m
    art_rows = []
    for i in range(m):
        if i >= m_eq and not flip[i]:
            basis[i] = 2 * nv + (i - m_eq)
        else:
            art_rows.append(i)
    n_art = len(art_rows)
    tab = np.zeros((m, n_std + n_art + 1))
    tab[:, :n_std] = A
    tab[:, -1] = b
    for j, i in enumerate(art_rows):
        tab[i, n_std + j] = 1.0
        basis[i] = n_std + j

    iterations = 0
    if n_art:
        obj1 = np.zeros(n_std + n_art + 1)
        obj1[n_std : n_std + n_art] = 1.0
        for i in art_rows:
            obj1 -= tab[i]
        allowed = np.ones(n_std + n_art, dtype=bool)
        iterations = _run_phase(tab, obj1, basis, allowed, 0, maxiter)
        if -obj1[-1] > 1e-9 * (1.0 + np.abs(b).max(initial=0.0)):
            raise LPInfeasible("phase-1 optimum is positive")
        # drive leftover artificial variables out of the basis
        drop_rows = []
        for i in range(m):
            if basis[i] >= n_std:
                cols = np.nonzero(np.abs(tab[i, :n_std]) > _PIV_TOL)[0]
                if cols.size == 0:
                    drop_rows.append(i)
                else:
                    _pivot(tab, obj1, i, int(cols[0]))
                    basis[i] = int(cols[0])
        if drop_rows:
            keep = [i for i in range(m) if i not in set(drop_rows)]
            tab = tab[keep]
            basis = [basis[i] for i in keep]
            m = tab.shape[0]

    # phase 2 on the original costs; artificial columns are removed outright
    tab = np.concatenate([tab[:, :n_std], tab[:, -1:]], axis=1)
    c_std = np.concatenate([c, -c, np.zeros(m_ub)])
    obj2 = np.concatenate([c_std, [0.0]])
    for i in range(m):
        if obj2[basis[i]] != 0.0:
            obj2 -= obj2[basis[i]] * tab[i]
    allowed = np.ones(n_std, dtype=bool)
    iterations = _run_phase(tab, obj2, basis, allowed, iterations, maxiter)

    x_std = np.zeros(n_std)
    for i in range(m):
        x_std[basis[i]] = tab[i, -1]
    x = x_std[:nv] - x_std[nv : 2 * nv]
    fun = float(c @ x)

    # defensive residual check: these LPs are small enough that anything
    # beyond roundoff signals a real problem upstream
    if m_eq and np.abs(A_eq @ x - b_eq).max() > 1e-7 * (1.0 + np.abs(b_eq).max()):
        raise LPError("equality residual too large after solve")
    if m_ub and (A_ub @ x - b_ub).max() > 1e-7 * (1.0 + np.abs(b_ub).max()):
        raise LPError("inequality residual too large after solve")
    return LPResult(x=x, fun=fun, iterations=iterations)
