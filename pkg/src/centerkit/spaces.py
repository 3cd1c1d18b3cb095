"""Finite-dimensional normed spaces with optional affine equality constraints.

The four built-in norms (l1, euclidean, sup, weighted sup) all have
closed-form dual norms and closed-form norming directions, which keeps the
innermost solver loops free of auxiliary optimization problems. A space may
carry an affine system A x = b cutting out a subspace; membership and the
orthonormal chart of that subspace live here as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

import numpy as np

__all__ = [
    "NormKind",
    "NormSpec",
    "Functional",
    "norm",
    "dual_norm",
    "norming_direction",
    "in_subspace",
    "distance",
    "affine_chart",
]

# relative floor on singular values for the constraint rank check
_RANK_TOL = 1e-10


class NormKind(Enum):
    L1 = "L1"
    L2 = "L2"
    LINF = "LInf"
    WEIGHTED_SUP = "WeightedSup"


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float)
    out.setflags(write=False)
    return out


def _signs(v: np.ndarray) -> np.ndarray:
    # sign(0) := +1 so norming directions are reproducible bit for bit
    return np.where(v < 0.0, -1.0, 1.0)


@dataclass(frozen=True, eq=False)
class NormSpec:
    """A norm on ``dim``-dimensional coordinate space, optionally restricted
    to the affine subspace ``{x : A x = b}``.

    ``scale`` holds the strictly positive per-coordinate factors of the
    weighted sup norm ``max_k scale_k |x_k|`` and must be None for the other
    kinds. Constraint systems must have full row rank and strictly fewer rows
    than ``dim``.
    """

    dim: int
    kind: NormKind
    scale: Optional[np.ndarray] = None
    constraint_matrix: Optional[np.ndarray] = None
    constraint_rhs: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        if int(self.dim) < 1:
            raise ValueError("dim must be a positive integer")
        object.__setattr__(self, "dim", int(self.dim))
        if not isinstance(self.kind, NormKind):
            object.__setattr__(self, "kind", NormKind(self.kind))
        if self.kind is NormKind.WEIGHTED_SUP:
            if self.scale is None:
                raise ValueError("WeightedSup requires per-coordinate scale factors")
            s = np.asarray(self.scale, dtype=float).reshape(-1)
            if s.shape != (self.dim,):
                raise ValueError(f"scale has length {s.size}, expected {self.dim}")
            if not np.all(np.isfinite(s)) or not np.all(s > 0.0):
                raise ValueError("scale factors must be finite and strictly positive")
            object.__setattr__(self, "scale", _frozen(s))
        elif self.scale is not None:
            raise ValueError("scale is only meaningful for the WeightedSup kind")

        if (self.constraint_matrix is None) != (self.constraint_rhs is None):
            raise ValueError("constraint matrix and rhs must be given together")
        if self.constraint_matrix is not None:
            A = np.atleast_2d(np.asarray(self.constraint_matrix, dtype=float))
            b = np.atleast_1d(np.asarray(self.constraint_rhs, dtype=float)).reshape(-1)
            m = A.shape[0]
            if A.shape != (m, self.dim):
                raise ValueError(f"constraint matrix shape {A.shape} incompatible with dim {self.dim}")
            if b.shape != (m,):
                raise ValueError(f"constraint rhs has length {b.size}, expected {m}")
            if m >= self.dim:
                raise ValueError("constraint system must leave at least one free dimension (m < dim)")
            sv = np.linalg.svd(A, compute_uv=False)
            if sv[-1] <= _RANK_TOL * sv[0]:
                raise ValueError("constraint matrix is rank deficient")
            object.__setattr__(self, "constraint_matrix", _frozen(A))
            object.__setattr__(self, "constraint_rhs", _frozen(b))

    # -- convenience constructors -------------------------------------------------

    @classmethod
    def l1(cls, dim: int, **kw) -> "NormSpec":
        return cls(dim, NormKind.L1, **kw)

    @classmethod
    def l2(cls, dim: int, **kw) -> "NormSpec":
        return cls(dim, NormKind.L2, **kw)

    @classmethod
    def linf(cls, dim: int, **kw) -> "NormSpec":
        return cls(dim, NormKind.LINF, **kw)

    @classmethod
    def weighted_sup(cls, scale: Sequence[float], **kw) -> "NormSpec":
        s = np.asarray(scale, dtype=float).reshape(-1)
        return cls(s.size, NormKind.WEIGHTED_SUP, scale=s, **kw)

    @property
    def constrained(self) -> bool:
        return self.constraint_matrix is not None

    def check_vector(self, x) -> np.ndarray:
        v = np.asarray(x, dtype=float).reshape(-1)
        if v.shape != (self.dim,):
            raise ValueError(f"vector has length {v.size}, expected {self.dim}")
        return v


@dataclass(frozen=True, eq=False)
class Functional:
    """A linear functional acting by the standard inner product, with its
    dual norm (w.r.t. the space that built it) cached."""

    coefficients: np.ndarray
    dual_norm_value: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", _frozen(np.asarray(self.coefficients, dtype=float).reshape(-1)))
        object.__setattr__(self, "dual_norm_value", float(self.dual_norm_value))

    @classmethod
    def for_space(cls, space: NormSpec, coefficients) -> "Functional":
        g = space.check_vector(coefficients)
        return cls(g, dual_norm(space, g))

    def __call__(self, x) -> float:
        return float(np.dot(self.coefficients, np.asarray(x, dtype=float).reshape(-1)))


def norm(space: NormSpec, x) -> float:
    """Evaluate the space norm of ``x``."""
    v = space.check_vector(x)
    if space.kind is NormKind.L1:
        return float(np.abs(v).sum())
    if space.kind is NormKind.L2:
        return float(np.linalg.norm(v))
    if space.kind is NormKind.LINF:
        return float(np.abs(v).max())
    return float((space.scale * np.abs(v)).max())


def distance(space: NormSpec, x, y) -> float:
    return norm(space, np.asarray(x, dtype=float) - np.asarray(y, dtype=float))


def dual_norm(space: NormSpec, g) -> float:
    """Dual norm of the coefficient vector ``g``: sup of <g, x> over the unit
    ball of the space norm."""
    v = space.check_vector(g)
    if space.kind is NormKind.L1:
        return float(np.abs(v).max())
    if space.kind is NormKind.L2:
        return float(np.linalg.norm(v))
    if space.kind is NormKind.LINF:
        return float(np.abs(v).sum())
    return float((np.abs(v) / space.scale).sum())


def norming_direction(space: NormSpec, g: Union[Functional, np.ndarray, Sequence[float]]) -> np.ndarray:
    """A unit vector z (space norm) with <g, z> = -dual_norm(g), exactly.

    Tie-breaking is deterministic: sign(0) := +1 everywhere, and the l1 norm
    picks the smallest index attaining max_k |g_k|.
    """
    coeffs = g.coefficients if isinstance(g, Functional) else g
    v = space.check_vector(coeffs)
    if not np.any(v != 0.0):
        raise ValueError("norming direction of the zero functional is undefined")
    if space.kind is NormKind.LINF:
        return -_signs(v)
    if space.kind is NormKind.L1:
        k = int(np.argmax(np.abs(v)))
        z = np.zeros(space.dim)
        z[k] = -_signs(v[k : k + 1])[0]
        return z
    if space.kind is NormKind.L2:
        return -v / np.linalg.norm(v)
    return -_signs(v) / space.scale


def in_subspace(space: NormSpec, x, tol: float = 1e-9) -> bool:
    """True iff ||A x - b||_inf <= tol; vacuously true without constraints."""
    v = space.check_vector(x)
    if not space.constrained:
        return True
    resid = space.constraint_matrix @ v - space.constraint_rhs
    return bool(np.abs(resid).max() <= tol)


def affine_chart(space: NormSpec) -> tuple[np.ndarray, np.ndarray]:
    """Particular solution x0 and orthonormal null-space basis N (columns) of
    the constraint system, so that {x : A x = b} = {x0 + N y}.

    For unconstrained spaces returns the origin and the identity.
    """
    if not space.constrained:
        return np.zeros(space.dim), np.eye(space.dim)
    A = space.constraint_matrix
    b = space.constraint_rhs
    m = A.shape[0]
    _, _, vt = np.linalg.svd(A)
    basis = vt[m:].T
    x0 = np.linalg.lstsq(A, b, rcond=None)[0]
    return x0, basis
