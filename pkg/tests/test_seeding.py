import numpy as np

from lsckc import Dataset, normalize, seed_centers
from lsckc.metric import TOL
from lsckc.synthgen import GenParams, generate


def test_seed_line_clusters():
    # hand simulation: 0 seeds, 1 covered, 10 seeds, 11 covered, ...
    ds = Dataset([[0.0], [1.0], [10.0], [11.0], [20.0], [21.0]])
    assert seed_centers(ds, [], 2.0) == [0, 2, 4]


def test_seed_ml_big_point_stops_after_first():
    # after adding 0, the single center 0 serves {0,3} within max distance 3
    ds = Dataset([[0.0], [3.0]])
    system = normalize([], [[0, 1]])
    assert seed_centers(ds, system.ml, 6.0) == [0]


def test_seed_single_point_always_added():
    ds = Dataset([[4.2]])
    assert seed_centers(ds, [], 100.0) == [0]


def test_seed_respects_initial_centers():
    ds = Dataset([[0.0], [1.0], [10.0]])
    assert seed_centers(ds, [], 2.0, initial=[1]) == [1, 2]


def test_seed_unconstrained_coverage_any_threshold():
    rng = np.random.default_rng(3)
    for trial in range(30):
        n = int(rng.integers(5, 25))
        ds = Dataset(rng.uniform(0, 20, size=(n, 2)))
        ml_ids = list(rng.permutation(n))
        ml_sets = []
        while len(ml_ids) >= 3 and len(ml_sets) < 2:
            ml_sets.append([int(ml_ids.pop()) for _ in range(2)])
        system = normalize([], ml_sets)
        threshold = float(rng.uniform(0.5, 15))
        centers = seed_centers(ds, system.ml, threshold)
        nearest = ds.nearest_distances(centers)
        ml_points = set(system.ml_of)
        for p in range(n):
            if p not in ml_points:
                assert nearest[p] <= threshold + TOL


def test_seed_ml_coverage_at_twice_opt():
    # single-center service of each ML set is only promised once the
    # threshold reaches twice the optimum (the set diameter is below that)
    from helpers import random_small_instance

    from lsckc import exact_opt

    for seed in range(40):
        inst = random_small_instance(seed)
        if not inst.system.ml:
            continue
        opt, _ = exact_opt(inst)
        threshold = 2.0 * opt
        centers = seed_centers(inst.dataset, inst.system.ml, threshold)
        for ml in inst.system.ml:
            big = min(
                max(inst.dataset.distance(x, c) for x in ml.members)
                for c in centers
            )
            assert big <= threshold + TOL


def test_seed_at_twice_planted_radius_fits_budget():
    # planted instances, no CL sets: seed count <= k at threshold 2*opt
    for seed in range(5):
        inst = generate(
            GenParams(n=80, k=6, dim=2, cl_ratio=0.0, ml_ratio=0.08, seed=seed)
        )
        centers = seed_centers(
            inst.dataset, inst.system.ml, 2.0 * inst.planted_opt
        )
        assert len(centers) <= inst.k


def test_seed_deterministic():
    rng = np.random.default_rng(9)
    ds = Dataset(rng.uniform(0, 10, size=(30, 3)))
    system = normalize([], [[0, 1, 2], [5, 6]])
    a = seed_centers(ds, system.ml, 4.0)
    b = seed_centers(ds, system.ml, 4.0)
    assert a == b
