import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lsckc import Dataset, InfeasibleConstraintsError, effective_distance, normalize, validate


def test_ml_transitive_merge():
    system = normalize([], [[0, 1], [1, 2]])
    assert len(system.ml) == 1
    assert system.ml[0].members == (0, 1, 2)


def test_empty_system():
    system = normalize([], [])
    assert system.is_empty()
    assert system.disjoint_cl


def test_cl_ml_contradiction():
    with pytest.raises(InfeasibleConstraintsError):
        normalize([[0, 1]], [[0, 1]])


def test_contradiction_via_merge():
    # CL {0,2} is fine against ML {0,1} and {1,2} separately, but their
    # merge puts 0 and 2 in one ML set
    with pytest.raises(InfeasibleConstraintsError):
        normalize([[0, 2]], [[0, 1], [1, 2]])


def test_singleton_cl_dropped():
    system = normalize([[3], [0, 1]], [])
    assert len(system.cl) == 1
    assert system.cl[0].members == (0, 1)


def test_duplicates_within_set_removed():
    system = normalize([[0, 1, 0, 1, 2]], [[4, 5, 4]])
    assert system.cl[0].members == (0, 1, 2)
    assert system.ml[0].members == (4, 5)


def test_disjoint_flag():
    assert normalize([[0, 1], [2, 3]], []).disjoint_cl
    assert not normalize([[0, 1], [1, 2]], []).disjoint_cl


def test_member_order_preserved():
    system = normalize([[5, 2, 9]], [[7, 3]])
    assert system.cl[0].members == (5, 2, 9)
    assert system.ml[0].members == (7, 3)


def test_normalize_idempotent():
    s1 = normalize([[0, 1], [2, 3, 4]], [[5, 6], [6, 7]])
    s2 = normalize(s1.cl_lists, s1.ml_lists)
    assert s1.cl_lists == s2.cl_lists
    assert s1.ml_lists == s2.ml_lists
    assert s1.disjoint_cl == s2.disjoint_cl


@settings(max_examples=150, deadline=None)
@given(
    st.lists(st.lists(st.integers(0, 15), min_size=1, max_size=4), max_size=4),
    st.lists(st.lists(st.integers(0, 15), min_size=1, max_size=4), max_size=4),
)
def test_normalize_idempotent_property(cl, ml):
    try:
        s1 = normalize(cl, ml)
    except InfeasibleConstraintsError:
        return
    s2 = normalize(s1.cl_lists, s1.ml_lists)
    assert s1.cl_lists == s2.cl_lists
    assert s1.ml_lists == s2.ml_lists
    # merged ML sets are pairwise disjoint
    for i in range(len(s1.ml)):
        for j in range(i + 1, len(s1.ml)):
            assert not set(s1.ml[i].members) & set(s1.ml[j].members)


def test_validate_cl_exceeds_k():
    system = normalize([[0, 1, 2, 3, 4]], [])
    errors = validate(system, k=3, n=10)
    assert any("exceeds k" in e for e in errors)


def test_validate_ok():
    system = normalize([[0, 1]], [[2, 3]])
    assert validate(system, k=3, n=5) == []


def test_validate_id_out_of_range():
    system = normalize([[0, 12]], [])
    errors = validate(system, k=3, n=10)
    assert any("out of range" in e for e in errors)


def test_effective_distance_unconstrained():
    ds = Dataset([[0.0], [4.0]])
    system = normalize([], [])
    assert effective_distance(0, 1, system, ds) == ds.distance(0, 1)


def test_effective_distance_big_point():
    # X = {0 at 0, 1 at 3}, center at 1: max(1, 2) = 2
    ds = Dataset([[0.0], [3.0], [1.0]])
    system = normalize([], [[0, 1]])
    assert effective_distance(0, 2, system, ds) == 2.0


def test_effective_distance_center_inside_set():
    # center is a member: max over members includes the far end
    ds = Dataset([[0.0], [3.0]])
    system = normalize([], [[0, 1]])
    assert effective_distance(0, 0, system, ds) == 3.0


def test_effective_distance_dominates_plain():
    ds = Dataset([[0.0], [3.0], [1.0], [7.0]])
    system = normalize([], [[0, 1]])
    for p in range(4):
        for c in range(4):
            assert effective_distance(p, c, system, ds) >= ds.distance(p, c)
