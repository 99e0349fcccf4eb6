import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lsckc import Dataset
from lsckc.metric import InputError


def test_distance_identity():
    ds = Dataset([[0.0]])
    assert ds.distance(0, 0) == 0.0


def test_distance_345_triangle():
    ds = Dataset([[0.0, 0.0], [3.0, 4.0]])
    assert ds.distance(0, 1) == 5.0


def test_distance_manhattan():
    ds = Dataset([[0.0, 0.0], [3.0, 4.0]], metric="manhattan")
    assert ds.distance(0, 1) == 7.0


def test_distance_chebyshev():
    ds = Dataset([[0.0, 0.0], [3.0, 4.0]], metric="chebyshev")
    assert ds.distance(0, 1) == 4.0


def test_distance_symmetric_and_zero_iff_equal():
    ds = Dataset([[1.0, 2.0], [4.0, 6.0], [1.0, 2.0]])
    assert ds.distance(0, 1) == ds.distance(1, 0) > 0
    assert ds.distance(0, 2) == 0.0  # distinct ids, equal coords


def test_out_of_range_id():
    ds = Dataset([[0.0]])
    with pytest.raises(InputError):
        ds.distance(0, 1)


def test_unknown_metric():
    with pytest.raises(InputError):
        Dataset([[0.0]], metric="cosine")


def test_dist_to_set_empty_is_infinite():
    ds = Dataset([[5.0]])
    assert ds.dist_to_set(0, []) == math.inf


def test_dist_to_set_min():
    ds = Dataset([[5.0], [0.0], [4.0], [9.0]])
    assert ds.dist_to_set(0, [1, 2, 3]) == 1.0


def test_dist_to_set_self():
    ds = Dataset([[5.0], [0.0]])
    assert ds.dist_to_set(0, [0, 1]) == 0.0


def test_candidate_radii_three_points():
    ds = Dataset([[0.0], [1.0], [3.0]])
    assert ds.candidate_radii() == [1.0, 2.0, 3.0]


def test_candidate_radii_single_point():
    assert Dataset([[7.0]]).candidate_radii() == []


def test_candidate_radii_duplicate_coords():
    # derived by enumerating pairs and deduping: {0, 1}
    ds = Dataset([[0.0], [1.0], [1.0]])
    assert ds.candidate_radii() == [0.0, 1.0]


def test_candidate_radii_strictly_increasing():
    rng = np.random.default_rng(0)
    ds = Dataset(rng.uniform(0, 5, size=(40, 2)))
    radii = ds.candidate_radii()
    assert all(a < b for a, b in zip(radii, radii[1:]))
    assert len(radii) <= 40 * 39 // 2 + 1


@settings(max_examples=200, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.floats(-100, 100, allow_nan=False),
            st.floats(-100, 100, allow_nan=False),
            st.floats(-100, 100, allow_nan=False),
        ),
        min_size=3,
        max_size=3,
    ),
    st.sampled_from(["euclidean", "manhattan", "chebyshev"]),
)
def test_triangle_inequality(triple, metric):
    ds = Dataset(triple, metric=metric)
    assert ds.distance(0, 2) <= ds.distance(0, 1) + ds.distance(1, 2) + 1e-9


def test_triangle_inequality_bulk_random():
    # 10^4 random triples per metric, uncached path included
    for metric in ("euclidean", "manhattan", "chebyshev"):
        rng = np.random.default_rng(42)
        pts = rng.uniform(-50, 50, size=(200, 3))
        ds = Dataset(pts, metric=metric)
        idx = rng.integers(0, 200, size=(10_000, 3))
        for a, b, c in idx:
            assert ds.distance(int(a), int(c)) <= (
                ds.distance(int(a), int(b)) + ds.distance(int(b), int(c)) + 1e-9
            )


def test_cache_matches_uncached_bit_for_bit():
    rng = np.random.default_rng(1)
    pts = rng.uniform(0, 10, size=(30, 2))
    for metric in ("euclidean", "manhattan", "chebyshev"):
        cached = Dataset(pts, metric=metric, cache=True)
        lazy = Dataset(pts, metric=metric, cache=False)
        assert lazy._cache is None
        for a, b in [(0, 1), (5, 17), (29, 3), (4, 4)]:
            assert cached.distance(a, b) == lazy.distance(a, b)
            assert cached.distance(a, b) == lazy.distance(b, a)
        for a in (0, 13, 29):
            assert np.array_equal(cached.distances_from(a), lazy.distances_from(a))
        assert cached.candidate_radii() == lazy.candidate_radii()


def test_nearest_distances_matches_dist_to_set():
    rng = np.random.default_rng(2)
    ds = Dataset(rng.uniform(0, 10, size=(25, 2)))
    centers = [3, 11, 19]
    nd = ds.nearest_distances(centers)
    for p in range(ds.n):
        assert nd[p] == ds.dist_to_set(p, centers)
