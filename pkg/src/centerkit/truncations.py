"""Radius sweeps over growing finite-dimensional slices of two constrained
sup-norm sequence spaces.

Variant X keeps one balance constraint, sum_k 2^-k (x_{2k} - x_{2k-1}) = 0;
variant Y splits it into two, one over the odd slots and one over the even
slots. Coefficients are exact binary fractions, so zero-padding a feasible
point into a higher even dimension stays exactly feasible and sup-norm
distances are unchanged; radii along a sweep can therefore only go down.
The sweep records make no claim about any infinite-dimensional limit; they
are exploratory output.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence

import numpy as np

from .centers import PointSet, chebyshev_center
from .spaces import NormKind, NormSpec, in_subspace

__all__ = ["TruncationVariant", "SweepRecord", "SweepResult", "build_truncation", "radius_sweep"]

_MONOTONE_TOL = 2e-9


class TruncationVariant(Enum):
    X_SPACE = "XSpace"
    Y_SPACE = "YSpace"


@dataclass
class SweepRecord:
    dim: int
    radius: float
    center: np.ndarray
    certified: bool


@dataclass
class SweepResult:
    variant: TruncationVariant
    records: List[SweepRecord]
    monotone: bool


def build_truncation(variant: TruncationVariant, d: int) -> NormSpec:
    """Sup-norm space of even dimension d with the variant's balance rows."""
    variant = TruncationVariant(variant)
    if d % 2 != 0:
        raise ValueError("truncation dimension must be even")
    if d < 2:
        raise ValueError("truncation dimension must be at least 2")
    if variant is TruncationVariant.Y_SPACE and d < 4:
        raise ValueError("the two-constraint variant needs dimension >= 4")
    half = d // 2
    coeffs = np.array([2.0**-k for k in range(1, half + 1)])
    if variant is TruncationVariant.X_SPACE:
        row = np.zeros(d)
        row[1::2] = coeffs  # even slots (1-indexed) carry +2^-k
        row[0::2] = -coeffs  # odd slots carry -2^-k
        A = row[None, :]
        b = np.zeros(1)
    else:
        odd = np.zeros(d)
        odd[0::2] = coeffs
        even = np.zeros(d)
        even[1::2] = coeffs
        A = np.vstack([odd, even])
        b = np.zeros(2)
    return NormSpec(d, NormKind.LINF, constraint_matrix=A, constraint_rhs=b)


def _pad(points: np.ndarray, d: int) -> np.ndarray:
    out = np.zeros((points.shape[0], d))
    out[:, : points.shape[1]] = points
    return out


def radius_sweep(
    variant: TruncationVariant,
    seed_points: Sequence[Sequence[float]],
    dims: Sequence[int],
    tol: float = 1e-9,
) -> SweepResult:
    """Chebyshev radius of the zero-padded seed set inside each truncation.

    Every seed point, padded to each requested dimension, must satisfy that
    truncation's constraints at 1e-9 (padding preserves feasibility since the
    padded coordinates contribute nothing to the balance sums).
    """
    variant = TruncationVariant(variant)
    seeds = np.atleast_2d(np.asarray(seed_points, dtype=float))
    d0 = seeds.shape[1]
    dims = sorted(int(d) for d in dims)
    records: List[SweepRecord] = []
    for d in dims:
        if d < d0:
            raise ValueError(f"sweep dimension {d} is below the seed dimension {d0}")
        space = build_truncation(variant, d)
        padded = _pad(seeds, d)
        for i, p in enumerate(padded):
            if not in_subspace(space, p, 1e-9):
                raise ValueError(f"seed point {i} violates the dimension-{d} constraints")
        F = PointSet(space, padded)
        res = chebyshev_center(F, tol=tol)
        records.append(SweepRecord(dim=d, radius=res.radius, center=res.center, certified=res.certified))
    monotone = all(
        records[i + 1].radius <= records[i].radius + _MONOTONE_TOL for i in range(len(records) - 1)
    )
    return SweepResult(variant=variant, records=records, monotone=monotone)
