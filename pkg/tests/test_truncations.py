import numpy as np
import pytest

import centerkit as ck
from centerkit.truncations import TruncationVariant, build_truncation, radius_sweep


def test_x_space_d2():
    space = build_truncation(TruncationVariant.X_SPACE, 2)
    assert space.kind is ck.NormKind.LINF
    assert np.allclose(space.constraint_matrix, [[-0.5, 0.5]])
    assert np.allclose(space.constraint_rhs, [0.0])


def test_y_space_d4():
    space = build_truncation(TruncationVariant.Y_SPACE, 4)
    assert np.allclose(space.constraint_matrix, [[0.5, 0.0, 0.25, 0.0], [0.0, 0.5, 0.0, 0.25]])


def test_parity_and_size_rejected():
    with pytest.raises(ValueError):
        build_truncation(TruncationVariant.X_SPACE, 3)
    with pytest.raises(ValueError):
        build_truncation(TruncationVariant.X_SPACE, 0)
    with pytest.raises(ValueError):
        build_truncation(TruncationVariant.Y_SPACE, 2)


def test_coefficients_are_exact_binary_fractions():
    space = build_truncation(TruncationVariant.X_SPACE, 8)
    row = space.constraint_matrix[0]
    assert row[1] == 0.5 and row[3] == 0.25 and row[5] == 0.125 and row[7] == 0.0625
    assert row[0] == -0.5 and row[6] == -0.0625


def test_sweep_diagonal_example():
    res = radius_sweep(TruncationVariant.X_SPACE, [[0.0, 0.0], [2.0, 2.0]], [2])
    assert abs(res.records[0].radius - 1.0) <= 1e-9
    assert np.allclose(res.records[0].center[:2], [1.0, 1.0], atol=1e-6)


def test_sweep_monotone_example():
    res = radius_sweep(TruncationVariant.X_SPACE, [[0.0, 0.0], [2.0, 2.0]], [2, 4, 6])
    radii = [r.radius for r in res.records]
    assert res.monotone
    assert all(r <= 1.0 + 1e-9 for r in radii)


def test_sweep_singleton_y_space():
    res = radius_sweep(TruncationVariant.Y_SPACE, [[0.0, 0.0, 0.0, 0.0]], [4])
    assert res.records[0].radius <= 1e-12


def test_sweep_rejects_bad_seeds():
    with pytest.raises(ValueError):
        radius_sweep(TruncationVariant.X_SPACE, [[1.0, 0.0]], [2])  # violates the constraint
    with pytest.raises(ValueError):
        radius_sweep(TruncationVariant.X_SPACE, [[0.0, 0.0, 0.0, 0.0]], [2])  # dim below seed


def test_sweep_centers_feasible_and_radius_consistent(rng):
    # random feasible seeds: fix the last even slot from the others
    for _ in range(5):
        seeds = rng.uniform(-1, 1, (3, 4))
        space4 = build_truncation(TruncationVariant.X_SPACE, 4)
        row = space4.constraint_matrix[0]
        for p in seeds:
            p[3] -= (row @ p) / row[3]
        res = radius_sweep(TruncationVariant.X_SPACE, seeds, [4, 6, 8])
        assert res.monotone
        for rec in res.records:
            space = build_truncation(TruncationVariant.X_SPACE, rec.dim)
            assert ck.in_subspace(space, rec.center, 1e-9)
            padded = np.zeros((3, rec.dim))
            padded[:, :4] = seeds
            F = ck.PointSet(space, padded)
            assert abs(ck.eval_radius(F, rec.center) - rec.radius) <= 1e-9
