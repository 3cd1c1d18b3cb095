"""Acceptance gate.

One test per criterion; each prints a PASS/FAIL line (run with ``-s`` to see
them on success). Tolerances are pinned here, not configurable.
"""

import subprocess
import sys

import numpy as np
import pytest

import centerkit as ck
from centerkit.cli import DEMOS

from conftest import KINDS, center_corpus, empty_ball_systems, equalize_targets, make_space
import oracles


def _report(name: str, ok: bool, detail: str = ""):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}"
    if detail:
        line += f"  ({detail})"
    print(line)
    assert ok, line


def _oracle_radius(kind, pts, weights):
    n, dim = pts.shape
    if n == 2:
        space = make_space(kind, dim)
        return oracles.two_point_radius(ck.distance(space, pts[0], pts[1]), weights[0], weights[1])
    if kind == "LInf":
        return oracles.weighted_linf_radius(pts, weights)
    obj = oracles.minimax_objective(pts, weights, kind)
    val, _ = oracles.grid_min(obj, *oracles.grid_box(pts))
    return val


def test_criterion_1_center_oracle_equivalence():
    corpus = center_corpus()
    worst = 0.0
    for kind, pts, weights in corpus:
        space = make_space(kind, pts.shape[1])
        res = ck.chebyshev_center(ck.PointSet(space, pts, weights), tol=1e-9)
        ref = _oracle_radius(kind, pts, weights)
        worst = max(worst, abs(res.radius - ref))
    _report("criterion 1: center radius matches oracle on 200 instances (1e-6)", worst <= 1e-6, f"worst |diff| = {worst:.3e}")


def test_criterion_2_duality():
    corpus = center_corpus()
    failures = 0
    for kind, pts, _ in corpus:
        space = make_space(kind, pts.shape[1])
        if not ck.duality_check(ck.PointSet(space, pts), tol=1e-9):
            failures += 1
    _report("criterion 2: duality_check passes on the full corpus", failures == 0, f"{failures} failures")


def test_criterion_3_equalizer():
    systems = empty_ball_systems()
    runs = 0
    case2 = 0
    worst_containment = -np.inf
    for kind, space, balls in systems:
        for r in equalize_targets(balls):
            res = ck.equalize(space, balls, r)  # any raised error fails the criterion
            runs += 1
            assert res.verification.status is ck.FeasibilityStatus.EMPTY
            for st, b in zip(res.steps, balls):
                slack = ck.norm(space, st.new_center - b.center) - (r - b.radius)
                worst_containment = max(worst_containment, slack)
                assert slack <= 1e-9
                if st.case is ck.StepCase.SEPARATED:
                    case2 += 1
                    f = st.separator
                    sup_ball = f(st.new_center - b.center) + f.dual_norm_value * r
                    assert sup_ball <= 1.0 - st.epsilon + 1e-9
                    assert 1.0 - st.epsilon < 1.0
    _report(
        "criterion 3: equalizer verified on 200 systems x 3 radii",
        runs == 600,
        f"{runs} runs, {case2} separation steps, max containment slack {worst_containment:.2e}",
    )


def test_criterion_4_equilateral_disks():
    space = ck.NormSpec.l2(2)
    triad = [
        ck.Ball([0.0, 0.0], 1.05),
        ck.Ball([2.0, 0.0], 1.05),
        ck.Ball([1.0, np.sqrt(3.0)], 1.05),
    ]
    cert = ck.intersect(space, triad)
    ok = cert.status is ck.FeasibilityStatus.EMPTY
    depth_err = abs(cert.depth - (2.0 / np.sqrt(3.0) - 1.05))
    ok = ok and depth_err <= 1e-6
    res = ck.equalize(space, triad, 1.2)
    ok = ok and res.verification.status is ck.FeasibilityStatus.EMPTY
    move_err = 0.0
    for st, b in zip(res.steps, triad):
        if st.case is ck.StepCase.SEPARATED:
            move_err = max(move_err, abs(np.linalg.norm(st.new_center - b.center) - 0.15))
    ok = ok and move_err <= 1e-9
    _report(
        "criterion 4: equilateral disks named instance",
        ok,
        f"depth err {depth_err:.2e}, displacement err {move_err:.2e}",
    )


def test_criterion_5_nnets():
    square = ck.PointSet(ck.NormSpec.l2(2), [[0, 0], [1, 0], [0, 1], [1, 1]])
    ok = abs(ck.best_nnet_exact(square, 2).covering_radius - 0.5) <= 1e-6

    rng = np.random.default_rng(5150)
    checked = 0
    while checked < 50:
        kind = KINDS[int(rng.integers(0, 3))]
        dim = int(rng.integers(1, 4))
        n_pts = int(rng.integers(3, 11 if kind == "L2" else 8))
        space = make_space(kind, dim)
        F = ck.PointSet(space, rng.uniform(-2, 2, (n_pts, dim)))
        n = int(rng.integers(1, 4))
        exact = ck.best_nnet_exact(F, n).covering_radius
        heur = ck.best_nnet_heuristic(F, n).covering_radius
        ok = ok and (exact - 1e-6 <= heur <= 2 * exact + 1e-6)
        if n == 1:
            ok = ok and abs(exact - ck.chebyshev_center(F).radius) <= 2e-6
        else:
            ok = ok and abs(ck.best_nnet_exact(F, 1).covering_radius - ck.chebyshev_center(F).radius) <= 2e-6
        values = [ck.best_nnet_exact(F, k).covering_radius for k in range(1, 4)]
        ok = ok and all(b <= a + 1e-9 for a, b in zip(values, values[1:]))
        checked += 1
    _report("criterion 5: n-nets (square, 50 random, n=1 link, monotone)", ok, f"{checked} random instances")


def test_criterion_6_f_centers():
    space = ck.NormSpec.l2(2)
    tri = ck.PointSet(space, [[0, 0], [1, 0], [0.5, np.sqrt(3) / 2]])
    res = ck.chebyshev_center(tri, ck.power_sum(1.0))
    obj = oracles.powersum_objective(tri.points, tri.weights, 1.0, "L2")
    oracle_val, _ = oracles.grid_min(obj, *oracles.grid_box(tri.points))
    ok = abs(res.radius - np.sqrt(3.0)) <= 1e-4 and abs(res.radius - oracle_val) <= 1e-4

    rng = np.random.default_rng(606)
    beaten = 0
    for _ in range(100):
        kind = KINDS[int(rng.integers(0, 3))]
        dim = int(rng.integers(1, 4))
        n = int(rng.integers(2, 6))
        pts = rng.uniform(-2, 2, (n, dim))
        weights = rng.uniform(0.5, 2.0, n)
        q = float(rng.uniform(1.0, 3.0))
        F = ck.PointSet(make_space(kind, dim), pts, weights)
        agg = ck.power_sum(q)
        sol = ck.chebyshev_center(F, agg)
        lo = pts.min(axis=0) - 0.5
        hi = pts.max(axis=0) + 0.5
        probes = rng.uniform(lo, hi, (1000, dim))
        for p in probes:
            if sol.radius > ck.eval_radius(F, p, agg) + 1e-9:
                beaten += 1
                break
    ok = ok and beaten == 0
    _report("criterion 6: f-centers (fermat value, 100x1000 probe dominance)", ok, f"{beaten} instances beaten by probes")


def test_criterion_7_truncation_sweeps():
    rng = np.random.default_rng(7070)
    dims_x = list(range(2, 17, 2))
    dims_y = list(range(4, 17, 2))
    ok = True
    for trial in range(20):
        variant = ck.TruncationVariant.X_SPACE if trial % 2 == 0 else ck.TruncationVariant.Y_SPACE
        dims = dims_x if variant is ck.TruncationVariant.X_SPACE else dims_y
        d0 = dims[0]
        space0 = ck.build_truncation(variant, d0)
        n_pts = int(rng.integers(2, 4))
        seeds = rng.uniform(-1.5, 1.5, (n_pts, d0))
        # repair the trailing slots so every seed satisfies the constraints exactly
        for p in seeds:
            A = space0.constraint_matrix
            if variant is ck.TruncationVariant.X_SPACE:
                p[d0 - 1] -= (A[0] @ p) / A[0, d0 - 1]
            else:
                p[d0 - 2] -= (A[0] @ p) / A[0, d0 - 2]
                p[d0 - 1] -= (A[1] @ p) / A[1, d0 - 1]
        res = ck.radius_sweep(variant, seeds, dims, tol=1e-9)
        ok = ok and res.monotone
        radii = [rec.radius for rec in res.records]
        ok = ok and all(b <= a + 2e-9 for a, b in zip(radii, radii[1:]))
        for rec in res.records:
            space = ck.build_truncation(variant, rec.dim)
            ok = ok and ck.in_subspace(space, rec.center, 1e-9)
            ok = ok and rec.certified
    _report("criterion 7: truncation sweeps monotone with feasible centers", ok)


def test_criterion_8_determinism(tmp_path):
    ok = True
    for name in sorted(DEMOS):
        blobs = []
        for tag in ("a", "b"):
            out = tmp_path / f"{name}-{tag}"
            proc = subprocess.run(
                [sys.executable, "-m", "centerkit", "demo", name, "--out", str(out), "--svg"],
                capture_output=True,
                text=True,
            )
            ok = ok and proc.returncode == 0
            blobs.append((out / "result.txt").read_bytes() + proc.stdout.encode())
        ok = ok and blobs[0] == blobs[1]
    _report("criterion 8: golden-instance runs are bit-identical", ok)
