import numpy as np
import pytest

import centerkit as ck

KINDS = ("L1", "L2", "LInf")

_SPACE_FACTORY = {
    "L1": ck.NormSpec.l1,
    "L2": ck.NormSpec.l2,
    "LInf": ck.NormSpec.linf,
}


def make_space(kind, dim, **kw):
    return _SPACE_FACTORY[kind](dim, **kw)


def center_corpus(seed=20240, count=200):
    """Random weighted-center instances restricted to oracle-checkable
    combinations: dim <= 2 (grid oracle), LInf (interval formula), or
    n == 2 (two-point formula)."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        dim = int(rng.integers(1, 5))
        n = int(rng.integers(2, 7))
        kind = KINDS[int(rng.integers(0, 3))]
        if dim > 2 and kind != "LInf" and n != 2:
            continue
        pts = rng.uniform(-2.0, 2.0, size=(n, dim))
        weights = np.ones(n) if rng.random() < 0.5 else rng.uniform(0.5, 2.0, size=n)
        out.append((kind, pts, weights))
    return out


def empty_ball_systems(seed=77, count=200):
    """Empty-intersection systems with depth >= 1e-3, mixing spread-out
    configurations (mostly already-empty subsystems) with near-miss clusters
    whose subsystems overlap (forcing separation steps)."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        dim = int(rng.integers(1, 5))
        n = int(rng.integers(2, 6))
        kind = KINDS[int(rng.integers(0, 3))]
        space = make_space(kind, dim)
        if rng.random() < 0.5:
            centers = rng.uniform(-1.5, 1.5, size=(n, dim))
            radii = rng.uniform(0.05, 0.45, size=n)
        else:
            # cluster: equal-ish radii just below the minimax radius
            centers = rng.uniform(-0.8, 0.8, size=(n, dim))
            rad = ck.chebyshev_center(ck.PointSet(space, centers)).radius
            if rad < 5e-3:
                continue
            beta = rng.uniform(0.55, 0.92)
            radii = beta * rad * rng.uniform(0.85, 1.0, size=n)
        accepted = None
        for _ in range(10):
            balls = [ck.Ball(c, r) for c, r in zip(centers, radii)]
            cert = ck.intersect(space, balls)
            if cert.status is ck.FeasibilityStatus.EMPTY and cert.depth >= 1e-3:
                accepted = balls
                break
            radii = radii * 0.55
        if accepted is not None:
            out.append((kind, space, accepted))
    return out


def equalize_targets(balls, rng=None):
    """Three target radii: barely above max r_i, moderate, large."""
    centers = np.array([b.center for b in balls])
    radii = np.array([b.radius for b in balls])
    rmax = float(radii.max())
    span = 0.0
    for i in range(len(balls)):
        for j in range(i + 1, len(balls)):
            span = max(span, float(np.linalg.norm(centers[i] - centers[j])))
    span = max(span + rmax, 1.0)
    return [rmax + 0.02 * span, rmax + 0.5 * span, rmax + 2.0 * span]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
