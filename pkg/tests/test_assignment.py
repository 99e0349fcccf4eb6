import numpy as np
import pytest

from lsckc import Dataset, Instance, assign, normalize, solve
from lsckc.assign import (
    AssignmentError,
    clustering_radius,
    nearest_center_radius,
    verify_assignment,
)
from lsckc.driver import GUARANTEE_INFEASIBLE


def _inst(coords, cl=(), ml=(), k=3, metric="euclidean"):
    return Instance(dataset=Dataset(coords, metric=metric), system=normalize(cl, ml), k=k)


def test_assign_unconstrained_nearest():
    inst = _inst([[0.0], [1.0], [10.0], [11.0]])
    a = assign([0, 2], inst, 1.0)
    assert a.center_of == [0, 0, 2, 2]
    assert a.radius == 1.0
    assert a.violations == []


def test_assign_cl_forced_matching():
    # CL {x at 0, y at 10.2}, centers {x, w at 10.3}: x self-serves, y -> w
    inst = _inst([[0.0], [10.2], [10.3]], cl=[[0, 1]], k=2)
    a = assign([0, 2], inst, 1.0)
    assert a.center_of[0] == 0
    assert a.center_of[1] == 2
    assert a.radius == pytest.approx(0.1)


def test_assign_ml_single_center():
    # ML {0 at 0, 1 at 3}, center 2 at 1 serves the pair at max(1, 2) = 2
    inst = _inst([[0.0], [3.0], [1.0]], ml=[[0, 1]], k=1)
    a = assign([2], inst, 2.0)
    assert a.center_of[0] == a.center_of[1] == 2
    assert a.radius == 2.0


def test_assign_ml_follows_cl_pin():
    # member 0 is CL-matched to center 3; its ML peer 1 must follow
    inst = _inst([[0.0], [0.5], [5.0], [0.2]], cl=[[0, 2]], ml=[[0, 1]], k=2)
    a = assign([2, 3], inst, 1.0)
    assert a.center_of[0] == 3
    assert a.center_of[1] == 3
    assert a.violations == []


def test_assign_radius_guard():
    inst = _inst([[0.0], [50.0]])
    with pytest.raises(AssignmentError):
        assign([0], inst, 1.0)


def test_assign_empty_centers_rejected():
    with pytest.raises(AssignmentError):
        assign([], _inst([[0.0]]), 1.0)


def test_clustering_cost_each_point_own_center():
    inst = _inst([[0.0], [5.0]])
    a = assign([0, 1], inst, 0.0)
    assert a.radius == 0.0


def test_clustering_cost_line():
    inst = _inst([[0.0], [1.0], [10.0], [11.0], [20.0], [21.0]])
    a = assign([0, 2, 4], inst, 2.0)
    assert clustering_radius(a.center_of, inst.dataset) == 1.0


def test_verify_clean():
    inst = _inst([[0.0], [1.0]], cl=[[0, 1]], k=2)
    assert verify_assignment([0, 1], inst.system) == []


def test_verify_cl_violation():
    inst = _inst([[0.0], [1.0]], cl=[[0, 1]], k=2)
    assert verify_assignment([0, 0], inst.system) == [("cl", 0, 1)]


def test_verify_ml_split_pairwise():
    inst = _inst([[0.0], [1.0], [2.0]], ml=[[0, 1, 2]], k=3)
    # a 3-member set split 2/1 yields 2 violated pairs
    out = verify_assignment([0, 0, 2], inst.system)
    assert out == [("ml", 0, 2), ("ml", 1, 2)]


def test_nearest_center_radius_differs_under_constraints():
    # constraints force a non-nearest assignment
    inst = _inst([[0.0], [1.0], [3.0]], cl=[[0, 1]], k=2)
    sol = solve(inst)
    assert sol.radius >= nearest_center_radius(sol.centers, inst.dataset)


def test_driver_solutions_verify_clean_and_cost_consistent(small_corpus):
    for seed, inst, opt, _ in small_corpus[:60]:
        sol = solve(inst)
        assert sol.guarantee != GUARANTEE_INFEASIBLE
        assert verify_assignment(sol.assignment, inst.system) == []
        assert clustering_radius(sol.assignment, inst.dataset) == sol.radius
        assert sol.radius <= sol.probed_eta + 1e-9


def test_unconstrained_assign_equals_nearest_radius():
    rng = np.random.default_rng(8)
    for _ in range(10):
        coords = rng.uniform(0, 10, size=(15, 2))
        inst = _inst(coords.tolist(), k=4)
        sol = solve(inst)
        assert sol.radius == pytest.approx(
            nearest_center_radius(sol.centers, inst.dataset)
        )
