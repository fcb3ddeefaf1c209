import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ordfix import (
    AntisymmetryViolation,
    Asymmetric,
    DuplicatePoint,
    InvalidPoint,
    NegativeDistance,
    NonzeroDiagonal,
    SelfMap,
    TriangleViolation,
    ZeroDistanceDistinct,
    close_order,
    comparable,
    line_space,
    metric_from_embedding,
    order_from_matrix,
    validate_metric,
)
from ordfix.errors import NotAnOrder, NotSquare, SizeMismatch

from conftest import spaces


def test_single_point_metric():
    m = validate_metric([[0]])
    assert m.size == 1 and m(0, 0) == 0


def test_two_point_metric():
    m = validate_metric([[0, 1], [1, 0]])
    assert m(0, 1) == 1 == m(1, 0)


def test_triangle_violation_reports_worst_triple():
    with pytest.raises(TriangleViolation) as err:
        validate_metric([[0, 1, 3], [1, 0, 1], [3, 1, 0]])
    e = err.value
    assert (e.i, e.j, e.k) == (0, 2, 1)
    assert e.defect == 1.0
    assert e.to_dict()["error"] == "TriangleViolation"


@pytest.mark.parametrize(
    "matrix, exc",
    [
        ([[0, 1], [2, 0]], Asymmetric),
        ([[0, -1], [-1, 0]], NegativeDistance),
        ([[1, 1], [1, 0]], NonzeroDiagonal),
        ([[0, 0], [0, 0]], ZeroDistanceDistinct),
        ([[0, 1, 2]], NotSquare),
    ],
)
def test_metric_rejections(matrix, exc):
    with pytest.raises(exc):
        validate_metric(matrix)


def test_triangle_tolerance_is_configurable():
    bad = [[0, 1, 2 + 1e-10], [1, 0, 1], [2 + 1e-10, 1, 0]]
    validate_metric(bad)  # within the default 1e-9
    with pytest.raises(TriangleViolation):
        validate_metric(bad, tol=1e-12)


def test_embedding_on_a_line():
    m = metric_from_embedding([[0], [5], [1]], "euclidean")
    assert (m(0, 1), m(1, 2), m(0, 2)) == (5, 4, 1)


def test_embedding_single_point_and_chebyshev():
    assert metric_from_embedding([[3.0, 4.0]]).dist.tolist() == [[0.0]]
    assert metric_from_embedding([[0, 0], [1, 1]], "chebyshev")(0, 1) == 1


def test_embedding_duplicate_rows():
    with pytest.raises(DuplicatePoint):
        metric_from_embedding([[0, 1], [2, 3], [0, 1]])


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 7).flatmap(
        lambda n: st.tuples(
            st.lists(st.lists(st.integers(-1000, 1000).map(lambda v: v / 8), min_size=3, max_size=3),
                     min_size=n, max_size=n, unique_by=tuple),
            st.sampled_from(["euclidean", "manhattan", "chebyshev"]),
        )
    )
)
def test_embedding_passes_validation(data):
    coords, norm = data
    m = metric_from_embedding(coords, norm)
    D = m.dist
    n = len(D)
    for i, j, k in itertools.product(range(n), repeat=3):
        assert D[i, k] <= D[i, j] + D[j, k] + 1e-9
    assert np.array_equal(D, D.T)


def test_close_order_transitivity():
    o = close_order([(0, 1), (1, 2)], 3)
    assert o.leq[0, 2]


def test_close_order_discrete():
    o = close_order([], 3)
    assert np.array_equal(o.leq, np.eye(3, dtype=bool))


def test_close_order_antisymmetry():
    with pytest.raises(AntisymmetryViolation) as err:
        close_order([(0, 1), (1, 0)], 2, "partial")
    assert {err.value.i, err.value.j} == {0, 1}
    q = close_order([(0, 1), (1, 0)], 2, "quasi")
    assert q.leq.all()


def test_close_order_rejects_bad_ids():
    with pytest.raises(InvalidPoint):
        close_order([(0, 3)], 3)


@given(spaces())
def test_close_order_idempotent(sp):
    again = close_order(sp.order.pairs(), sp.size, sp.order.kind)
    assert np.array_equal(again.leq, sp.leq)


def test_order_from_matrix_checks_axioms():
    with pytest.raises(NotAnOrder):
        order_from_matrix([[True, True, False], [False, True, True], [False, False, True]])
    with pytest.raises(NotAnOrder):
        order_from_matrix([[False]])


def test_comparable_examples(vee):
    assert comparable(vee, 1, 1)
    total = line_space([0, 1, 2], [(0, 1), (1, 2)])
    assert comparable(total, 0, 2)
    assert not comparable(vee, 0, 2)
    with pytest.raises(InvalidPoint):
        comparable(vee, 0, 3)


def test_comparability_is_not_transitive(vee):
    assert comparable(vee, 0, 1) and comparable(vee, 1, 2) and not comparable(vee, 0, 2)


@given(spaces())
def test_comparable_reflexive_symmetric(sp):
    for x in range(sp.size):
        assert comparable(sp, x, x)
        for y in range(sp.size):
            assert comparable(sp, x, y) == comparable(sp, y, x)


@given(spaces())
def test_validated_metrics_satisfy_axioms(sp):
    D = sp.dist
    n = sp.size
    for i in range(n):
        assert D[i, i] == 0
        for j in range(n):
            assert D[i, j] == D[j, i]
            assert i == j or D[i, j] > 0
            for k in range(n):
                assert D[i, k] <= D[i, j] + D[j, k] + 1e-9


def test_selfmap_validation_and_immutability():
    T = SelfMap([1, 0])
    assert T(0) == 1
    with pytest.raises(AttributeError):
        T.image = None
    with pytest.raises(ValueError):
        T.image[0] = 0
    with pytest.raises(InvalidPoint):
        SelfMap([0, 2])
    with pytest.raises(SizeMismatch):
        SelfMap([0], size=2)
