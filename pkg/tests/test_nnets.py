import numpy as np
import pytest

import centerkit as ck
from centerkit.nnets import BudgetExceeded

from conftest import KINDS, make_space


def _square(space=None):
    space = space or ck.NormSpec.l2(2)
    return ck.PointSet(space, [[0, 0], [1, 0], [0, 1], [1, 1]])


def test_covering_radius_examples():
    F = _square()
    assert abs(ck.covering_radius(F, [np.array([0.5, 0.0])]) - np.sqrt(1.25)) <= 1e-12
    assert ck.covering_radius(F, [np.array(p, dtype=float) for p in F.points]) == 0.0
    line = ck.PointSet(ck.NormSpec.l2(1), [[0], [3]])
    assert ck.covering_radius(line, [np.array([1.0])]) == 2.0
    with pytest.raises(ValueError):
        ck.covering_radius(F, [])


def test_exact_square_n2():
    res = ck.best_nnet_exact(_square(), 2)
    assert abs(res.covering_radius - 0.5) <= 1e-9
    assert res.optimal
    assert len(res.nets) == 2
    assert sorted(res.assignment) == [0, 0, 1, 1]


def test_exact_trivial_cases():
    F = _square()
    res = ck.best_nnet_exact(F, 4)
    assert res.covering_radius <= 1e-9
    res1 = ck.best_nnet_exact(F, 1)
    ref = ck.chebyshev_center(F).radius
    assert abs(res1.covering_radius - ref) <= 2e-9


def test_exact_budget():
    big = ck.PointSet(ck.NormSpec.l2(2), np.random.default_rng(0).uniform(size=(15, 2)))
    with pytest.raises(BudgetExceeded):
        ck.best_nnet_exact(big, 2)
    with pytest.raises(BudgetExceeded):
        ck.best_nnet_exact(_square(), 5)
    with pytest.raises(ValueError):
        ck.best_nnet_exact(_square(), 0)


def test_heuristic_examples():
    assert ck.best_nnet_heuristic(_square(), 4).covering_radius == 0.0
    line = ck.PointSet(ck.NormSpec.l2(1), [[0], [1], [10], [11]])
    res = ck.best_nnet_heuristic(line, 2)
    assert abs(res.covering_radius - 0.5) <= 1e-9
    exact = ck.best_nnet_exact(line, 2)
    assert abs(exact.covering_radius - 0.5) <= 1e-9
    sq = ck.best_nnet_heuristic(_square(), 2)
    assert 0.5 - 1e-9 <= sq.covering_radius <= np.sqrt(2) / 2 + 1e-9
    assert not sq.optimal


@pytest.mark.parametrize("kind", KINDS)
def test_heuristic_vs_exact_bounds(kind, rng):
    space = make_space(kind, 2)
    for _ in range(8):
        n_pts = int(rng.integers(3, 9))
        F = ck.PointSet(space, rng.uniform(-2, 2, (n_pts, 2)))
        for n in (1, 2, 3):
            exact = ck.best_nnet_exact(F, n).covering_radius
            heur = ck.best_nnet_heuristic(F, n).covering_radius
            assert heur >= exact - 1e-6
            assert heur <= 2 * exact + 1e-6


def test_monotone_in_n(rng):
    space = ck.NormSpec.l2(3)
    for _ in range(5):
        F = ck.PointSet(space, rng.uniform(-1, 1, (7, 3)))
        values = [ck.best_nnet_exact(F, n).covering_radius for n in (1, 2, 3, 4)]
        for a, b in zip(values, values[1:]):
            assert b <= a + 1e-9


def test_covering_radius_recomputed_and_assignment_ties():
    F = ck.PointSet(ck.NormSpec.l2(1), [[0.0], [1.0]])
    res = ck.best_nnet_exact(F, 2)
    assert res.covering_radius == ck.covering_radius(F, res.nets)
    # equidistant point picks the lowest net index
    nets = [np.array([1.0]), np.array([-1.0])]
    assert ck.assign_to_nets(F, nets)[0] == 0


def test_constrained_nets_stay_feasible():
    A = np.array([[-0.5, 0.5]])
    space = ck.NormSpec.l2(2, constraint_matrix=A, constraint_rhs=np.zeros(1))
    F = ck.PointSet(space, [[0, 0], [1, 1], [4, 4], [5, 5]])
    res = ck.best_nnet_exact(F, 2)
    for y in res.nets:
        assert ck.in_subspace(space, y, 1e-9)
    assert abs(res.covering_radius - 0.5 * np.sqrt(2)) <= 1e-6
