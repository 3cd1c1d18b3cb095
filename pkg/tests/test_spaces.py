import numpy as np
import pytest

import centerkit as ck
from centerkit.spaces import affine_chart

from conftest import KINDS, make_space


def test_norm_examples():
    assert ck.norm(ck.NormSpec.linf(2), [1, -2]) == 2
    assert ck.norm(ck.NormSpec.l1(2), [1, -2]) == 3
    assert ck.norm(ck.NormSpec.l2(2), [3, 4]) == 5
    assert ck.norm(ck.NormSpec.weighted_sup([1, 2]), [1, -2]) == 4


def test_dual_norm_examples():
    assert ck.dual_norm(ck.NormSpec.linf(2), [1, -2]) == 3
    assert ck.dual_norm(ck.NormSpec.l2(2), [3, 4]) == 5
    assert ck.dual_norm(ck.NormSpec.l1(2), [1, -2]) == 2
    assert ck.dual_norm(ck.NormSpec.weighted_sup([1, 2]), [1, -2]) == 2


def test_norming_direction_examples():
    z = ck.norming_direction(ck.NormSpec.linf(2), [1, -2])
    assert np.array_equal(z, [-1.0, 1.0])
    assert np.dot([1, -2], z) == -3
    z = ck.norming_direction(ck.NormSpec.l2(2), [3, 4])
    assert np.allclose(z, [-0.6, -0.8])
    z = ck.norming_direction(ck.NormSpec.l1(2), [1, -2])
    assert np.array_equal(z, [0.0, 1.0])
    assert np.dot([1, -2], z) == -2


def test_norming_direction_sign_zero_and_ties():
    # sign(0) := +1, and the l1 rule picks the smallest maximizing index
    z = ck.norming_direction(ck.NormSpec.linf(3), [0.0, 1.0, 0.0])
    assert np.array_equal(z, [-1.0, -1.0, -1.0])
    z = ck.norming_direction(ck.NormSpec.l1(3), [2.0, -2.0, 1.0])
    assert np.array_equal(z, [-1.0, 0.0, 0.0])


def test_norming_direction_zero_functional_rejected():
    with pytest.raises(ValueError):
        ck.norming_direction(ck.NormSpec.l2(2), [0.0, 0.0])


@pytest.mark.parametrize("kind", KINDS + ("WeightedSup",))
def test_norm_axioms_random(kind, rng):
    for _ in range(200):
        dim = int(rng.integers(1, 6))
        space = (
            ck.NormSpec.weighted_sup(rng.uniform(0.3, 3.0, dim))
            if kind == "WeightedSup"
            else make_space(kind, dim)
        )
        x = rng.normal(size=dim)
        y = rng.normal(size=dim)
        lam = rng.normal()
        nx, ny = ck.norm(space, x), ck.norm(space, y)
        assert abs(ck.norm(space, lam * x) - abs(lam) * nx) <= 1e-12 * (1 + abs(lam) * nx)
        assert ck.norm(space, x + y) <= nx + ny + 1e-12 * (1 + nx + ny)


@pytest.mark.parametrize("kind", KINDS + ("WeightedSup",))
def test_duality_pairing(kind, rng):
    for _ in range(200):
        dim = int(rng.integers(1, 6))
        space = (
            ck.NormSpec.weighted_sup(rng.uniform(0.3, 3.0, dim))
            if kind == "WeightedSup"
            else make_space(kind, dim)
        )
        g = rng.normal(size=dim)
        x = rng.normal(size=dim)
        bound = ck.dual_norm(space, g) * ck.norm(space, x)
        assert np.dot(g, x) <= bound + 1e-12 * (1 + bound)
        if np.any(g != 0):
            z = ck.norming_direction(space, g)
            assert abs(ck.norm(space, z) - 1.0) <= 1e-12
            assert abs(np.dot(g, z) + ck.dual_norm(space, g)) <= 1e-12 * (1 + ck.dual_norm(space, g))


def test_norming_direction_deterministic(rng):
    space = ck.NormSpec.linf(4)
    g = rng.normal(size=4)
    a = ck.norming_direction(space, g)
    b = ck.norming_direction(space, g.copy())
    assert a.tobytes() == b.tobytes()


def test_in_subspace_examples():
    A = np.array([[-0.5, 0.5]])
    b = np.array([0.0])
    space = ck.NormSpec.l2(2, constraint_matrix=A, constraint_rhs=b)
    assert ck.in_subspace(space, [2, 2], 1e-9)
    assert not ck.in_subspace(space, [0, 1], 1e-9)
    assert ck.in_subspace(ck.NormSpec.l2(2), [5, -3])


def test_affine_chart_roundtrip(rng):
    A = rng.normal(size=(2, 5))
    b = rng.normal(size=2)
    space = ck.NormSpec.l2(5, constraint_matrix=A, constraint_rhs=b)
    x0, basis = affine_chart(space)
    assert np.allclose(A @ x0, b, atol=1e-10)
    assert np.allclose(basis.T @ basis, np.eye(3), atol=1e-12)
    assert np.allclose(A @ basis, 0, atol=1e-12)


def test_normspec_validation():
    with pytest.raises(ValueError):
        ck.NormSpec.l2(0)
    with pytest.raises(ValueError):
        ck.NormSpec.weighted_sup([1.0, -1.0])
    with pytest.raises(ValueError):
        ck.NormSpec.l2(2, constraint_matrix=np.eye(2), constraint_rhs=np.zeros(2))  # m == dim
    rank_deficient = np.array([[1.0, 1.0, 0.0], [2.0, 2.0, 0.0]])
    with pytest.raises(ValueError):
        ck.NormSpec.l2(3, constraint_matrix=rank_deficient, constraint_rhs=np.zeros(2))
    with pytest.raises(ValueError):
        ck.norm(ck.NormSpec.l2(2), [1, 2, 3])


def test_functional_cached_dual_norm(rng):
    for kind in KINDS:
        space = make_space(kind, 3)
        g = rng.normal(size=3)
        f = ck.Functional.for_space(space, g)
        ref = ck.dual_norm(space, g)
        assert abs(f.dual_norm_value - ref) <= 1e-12 * (1 + ref)
        assert f(np.array([1.0, 0.0, 0.0])) == g[0]
