"""Relocation of a ball system onto a common radius, preserving emptiness.

Input: closed balls B[x_i, r_i] whose intersection is certifiably empty, and
a target radius r exceeding every r_i. Output: centers w_i such that every
B[w_i, r] contains its original ball and the relocated system still has
empty intersection.

The construction is inductive over the balls in input order. At step j the
mixed system (already-moved balls at radius r, untouched balls at their
original radii) is empty by the previous step. Remove ball j: if the rest
K1 is already empty, ball j need not move (w_j = x_j). Otherwise K1 is a
nonempty closed convex set disjoint from B[x_j, r_j], so a strictly
separating functional f exists; normalize it so inf over K1 of
<f, y - x_j> = 1, let 1 - eps = dual_norm(f) * r_j < 1, and push the center
the full slack along an exact norming direction z of f:

    w_j = x_j + (r - r_j) z,   ||z|| = 1,  <f, z> = -dual_norm(f).

Then for any x in B[w_j, r]:

    <f, x - x_j> <= dual_norm(f) * r + (r - r_j) <f, z> = dual_norm(f) * r_j
                 = 1 - eps < 1,

so B[w_j, r] misses K1, and containment of the original ball follows from
the triangle inequality since ||w_j - x_j|| = r - r_j exactly. Because the
built-in norms attain their dual norms, no slack term is needed in the
chain: the norming direction is exact.

Every step stores its functional, margin and direction, and every mixed
system is re-certified; a Witness certificate anywhere aborts the run
rather than returning an unverified result.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np

from .feasibility import (
    Ball,
    FeasibilityCertificate,
    FeasibilityStatus,
    intersect,
    linear_extent,
)
from .projections import ball_projector, dykstra
from .spaces import Functional, NormSpec, dual_norm, norm, norming_direction

__all__ = [
    "EqualizerError",
    "PreconditionRadiusError",
    "NotEmptyError",
    "NotDisjointError",
    "SeparationTooThinError",
    "LoopInvariantViolatedError",
    "StepCase",
    "Separation",
    "EqualizeStep",
    "EqualizeResult",
    "separate",
    "equalize",
]


class EqualizerError(Exception):
    pass


class PreconditionRadiusError(EqualizerError):
    """Target radius does not exceed every input radius."""


class NotEmptyError(EqualizerError):
    """The input system could not be certified empty."""


class NotDisjointError(EqualizerError):
    """A separation was requested for sets that are not certifiably disjoint."""


class SeparationTooThinError(EqualizerError):
    """The configuration is numerically touching; refusing to certify."""


class LoopInvariantViolatedError(EqualizerError):
    """A mixed system failed its emptiness certificate; aborting."""


class StepCase(Enum):
    ALREADY_EMPTY = "AlreadyEmpty"
    SEPARATED = "Separated"


@dataclass
class Separation:
    """A normalized strictly separating functional.

    alpha1 = inf over K1 of <f, y - target_center> (1 after scaling);
    alpha2 = dual_norm(f) * target_radius = 1 - epsilon.
    """

    functional: Functional
    alpha1: float
    alpha2: float
    epsilon: float
    point_in_k1: np.ndarray
    point_in_target: np.ndarray
    iterations: int


@dataclass
class EqualizeStep:
    index: int
    case: StepCase
    new_center: np.ndarray
    separator: Optional[Functional] = None
    epsilon: Optional[float] = None
    direction: Optional[np.ndarray] = None


@dataclass
class EqualizeResult:
    steps: List[EqualizeStep]
    new_balls: List[Ball]
    verification: FeasibilityCertificate


def separate(space: NormSpec, k1: Sequence[Ball], target: Ball, margin_tol: float = 1e-6) -> Separation:
    """Strictly separating functional between a nonempty ball intersection K1
    and a disjoint target ball, normalized so inf over K1 of
    <f, y - target.center> equals 1.

    The direction comes from the euclidean closest pair found by alternating
    projections (Dykstra corrections make the K1 projection exact); the
    normalizer alpha1 is a certified lower bound on the infimum, so the
    scaled functional's separation claim is safe by construction.
    """
    if space.constrained:
        raise ValueError("separation in constrained spaces is not supported")
    cert_k1 = intersect(space, k1)
    if cert_k1.status is not FeasibilityStatus.WITNESS:
        raise NotDisjointError("K1 must be a certified nonempty intersection")
    cert_all = intersect(space, list(k1) + [target])
    if cert_all.status is not FeasibilityStatus.EMPTY:
        raise NotDisjointError("K1 and the target ball are not certifiably disjoint")

    projectors = [ball_projector(space, b.center, b.radius) for b in k1]

    def project_k1(y):
        point, _, _ = dykstra(projectors, y)
        return point

    project_target = ball_projector(space, target.center, target.radius)
    p, q, iters, _ = _alternate(project_k1, project_target, cert_k1.witness)
    raw = p - q
    scale = 1.0 + float(np.linalg.norm(target.center)) + max(float(np.linalg.norm(b.center)) for b in k1)
    if float(np.linalg.norm(raw)) <= 1e-14 * scale:
        raise SeparationTooThinError("closest pair collapsed; sets are numerically touching")

    alpha1 = linear_extent(space, k1, raw, "min") - float(raw @ target.center)
    alpha2 = dual_norm(space, raw) * target.radius
    if alpha1 <= 0.0 or (alpha1 - alpha2) / alpha1 < margin_tol:
        raise SeparationTooThinError(
            f"separation margin {(alpha1 - alpha2) / alpha1 if alpha1 > 0 else float('-inf'):.3e} "
            f"below margin_tol {margin_tol:.3e}"
        )
    g = raw / alpha1
    functional = Functional.for_space(space, g)
    a2 = alpha2 / alpha1
    return Separation(
        functional=functional,
        alpha1=1.0,
        alpha2=a2,
        epsilon=1.0 - a2,
        point_in_k1=p,
        point_in_target=q,
        iterations=iters,
    )


def _alternate(project_a, project_b, start):
    from .projections import closest_pair

    return closest_pair(project_a, project_b, start)


def equalize(space: NormSpec, balls: Sequence[Ball], r: float, margin_tol: float = 1e-6) -> EqualizeResult:
    """Rebuild an empty ball system at the common radius r.

    Postconditions (verified, not assumed): every mixed system certificate
    along the induction and the final system certificate report Empty, and
    ||w_i - x_i|| <= r - r_i so that B[x_i, r_i] is contained in B[w_i, r].
    """
    balls = list(balls)
    centers = [space.check_vector(b.center) for b in balls]
    radii = [b.radius for b in balls]
    if space.constrained:
        raise ValueError("equalize is only supported in unconstrained spaces")
    if not r > max(radii):
        raise PreconditionRadiusError(f"target radius {r} must exceed every ball radius (max {max(radii)})")
    cert0 = intersect(space, balls)
    if cert0.status is not FeasibilityStatus.EMPTY:
        raise NotEmptyError(f"input system is not certified empty (status {cert0.status.value})")

    n = len(balls)
    new_centers: List[np.ndarray] = []
    steps: List[EqualizeStep] = []
    for j in range(n):
        k1 = [Ball(new_centers[i], r) for i in range(j)] + [balls[i] for i in range(j + 1, n)]
        mixed = k1 + [balls[j]]
        cert_mixed = intersect(space, mixed)
        if cert_mixed.status is not FeasibilityStatus.EMPTY:
            raise LoopInvariantViolatedError(
                f"mixed system at step {j} returned {cert_mixed.status.value}; aborting"
            )
        cert_k1 = intersect(space, k1)
        if cert_k1.status is FeasibilityStatus.EMPTY:
            w = centers[j].copy()
            steps.append(EqualizeStep(index=j, case=StepCase.ALREADY_EMPTY, new_center=w))
        elif cert_k1.status is FeasibilityStatus.WITNESS:
            sep = separate(space, k1, balls[j], margin_tol)
            z = norming_direction(space, sep.functional)
            w = centers[j] + (r - radii[j]) * z
            move = norm(space, w - centers[j])
            if move > r - radii[j] + 1e-9:
                raise LoopInvariantViolatedError(f"containment bound violated at step {j}")
            steps.append(
                EqualizeStep(
                    index=j,
                    case=StepCase.SEPARATED,
                    new_center=w,
                    separator=sep.functional,
                    epsilon=sep.epsilon,
                    direction=z,
                )
            )
        else:
            raise SeparationTooThinError(f"K1 feasibility undetermined at step {j}; configuration too tight")
        new_centers.append(w)

    new_balls = [Ball(c, r) for c in new_centers]
    verification = intersect(space, new_balls)
    if verification.status is not FeasibilityStatus.EMPTY:
        raise LoopInvariantViolatedError(
            f"final system returned {verification.status.value}; aborting instead of returning unverified output"
        )
    return EqualizeResult(steps=steps, new_balls=new_balls, verification=verification)
