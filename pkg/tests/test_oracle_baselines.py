import numpy as np
import pytest

from lsckc import Dataset, Instance, exact_opt, gonzalez, greedy_constrained, normalize, solve
from lsckc.assign import verify_assignment
from lsckc.baselines import OracleSizeError, gonzalez_solution
from lsckc.driver import GUARANTEE_INFEASIBLE


def _inst(coords, cl=(), ml=(), k=3, metric="euclidean"):
    return Instance(dataset=Dataset(coords, metric=metric), system=normalize(cl, ml), k=k)


def test_exact_small_cl():
    # centers must separate 0 and 1; best is radius 1
    inst = _inst([[0.0], [1.0], [2.0]], cl=[[0, 1]], k=2)
    r, centers = exact_opt(inst)
    assert r == 1.0


def test_exact_k_at_least_n():
    inst = _inst([[0.0], [4.0], [9.0]], k=3)
    r, centers = exact_opt(inst)
    assert r == 0.0
    assert sorted(centers) == [0, 1, 2]


def test_exact_ml_pair():
    # either endpoint serves the pair at distance 3
    inst = _inst([[0.0], [3.0]], ml=[[0, 1]], k=2)
    r, centers = exact_opt(inst)
    assert r == 3.0


def test_exact_infeasible_marker():
    inst = _inst([[0.0], [1.0], [2.0]], cl=[[0, 1, 2]], k=2)
    assert exact_opt(inst) is None


def test_exact_size_guard():
    coords = [[float(i)] for i in range(15)]
    with pytest.raises(OracleSizeError):
        exact_opt(_inst(coords, k=2))


def test_exact_radius_in_candidate_grid(small_corpus):
    for seed, inst, opt, _ in small_corpus[:80]:
        radii = inst.dataset.candidate_radii()
        assert opt == 0.0 or opt in radii


def test_gonzalez_k1():
    ds = Dataset([[0.0], [5.0], [9.0]])
    assert gonzalez(ds, 1) == [0]


def test_gonzalez_line():
    # farthest-first from id 0: next is 21 (id 5), then 10 or 11
    ds = Dataset([[0.0], [1.0], [10.0], [11.0], [20.0], [21.0]])
    centers = gonzalez(ds, 3)
    assert centers[:2] == [0, 5]
    assert centers[2] in (2, 3)


def test_gonzalez_k_at_least_n():
    ds = Dataset([[0.0], [5.0]])
    assert gonzalez(ds, 7) == [0, 1]


def test_gonzalez_two_approx_unconstrained(small_corpus):
    # classical farthest-first bound against the unconstrained optimum
    for seed, inst, _, _ in small_corpus[:30]:
        ds = inst.dataset
        free = Instance(dataset=ds, system=normalize([], []), k=inst.k)
        opt_free, _ = exact_opt(free)
        centers = gonzalez(ds, inst.k)
        radius = float(ds.nearest_distances(centers).max())
        assert radius <= 2 * opt_free + 1e-9


def test_greedy_unconstrained_equals_gonzalez():
    rng = np.random.default_rng(4)
    coords = rng.uniform(0, 10, size=(20, 2)).tolist()
    inst = _inst(coords, k=4)
    g = greedy_constrained(inst)
    base = gonzalez_solution(inst)
    assert g.centers == sorted(base.centers)
    assert g.radius == pytest.approx(base.radius)


def test_greedy_repairs_cl():
    # gonzalez alone would co-locate the CL pair; repair must separate them
    inst = _inst([[0.0], [0.1], [10.0], [10.1]], cl=[[0, 1]], k=2)
    sol = greedy_constrained(inst)
    assert sol.guarantee != GUARANTEE_INFEASIBLE
    assert verify_assignment(sol.assignment, inst.system) == []
    opt, _ = exact_opt(inst)
    assert sol.radius >= opt


def test_greedy_infeasible_marker():
    inst = _inst([[0.0], [1.0], [2.0]], cl=[[0, 1, 2]], k=2)
    sol = greedy_constrained(inst)
    assert sol.guarantee == GUARANTEE_INFEASIBLE


def test_greedy_never_silently_violates(small_corpus):
    for seed, inst, opt, _ in small_corpus[:40]:
        sol = greedy_constrained(inst)
        if sol.guarantee != GUARANTEE_INFEASIBLE:
            assert verify_assignment(sol.assignment, inst.system) == []


def test_driver_between_opt_and_twice_opt(small_corpus):
    for seed, inst, opt, _ in small_corpus[:60]:
        sol = solve(inst)
        assert opt - 1e-9 <= sol.radius <= 2 * opt + 1e-9
