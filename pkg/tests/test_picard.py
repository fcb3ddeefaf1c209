import numpy as np
from hypothesis import given

from ordfix import SelfMap, line_space
from ordfix.contraction import check_weak_conditional_G_contractive, ordered_contraction_factor
from ordfix.chain import chain_components
from ordfix.lab import T5_ALPHA_GRID
from ordfix.picard import (
    FINITE_SPACE_NOTE,
    Cycle,
    check_a06,
    check_ao_self_closed,
    classify_ordered,
    classify_plain,
    comparable_image_set,
    fixed_points,
    lower_image_set,
    picard_orbit,
)
from ordfix.space import make_space

from conftest import spaces_with_maps


def simulate(T, x, n):
    """Oracle: n+1 raw iterates."""
    out = [x]
    for _ in range(n):
        out.append(T(out[-1]))
    return out


def test_constant_orbit():
    sp = line_space([0, 1, 3], [(0, 1), (1, 2)])
    for x in range(3):
        r = picard_orbit(sp, SelfMap.constant(3, 1), x)
        assert r.reached_fixed_point and r.limit == 1 and r.steps_to_limit <= 1


def test_three_point_orbit(three_point):
    sp, T = three_point
    r = picard_orbit(sp, T, 2)
    assert r.orbit == (2, 1, 0) and r.limit == 0 and r.steps_to_limit == 2
    assert r.fixed_point == 0
    assert r.to_dict(("x0", "x1", "x3"))["orbit"] == ["x3", "x1", "x0"]


def test_swap_is_a_cycle():
    sp = line_space([0, 1], [])
    r = picard_orbit(sp, SelfMap([1, 0]), 0)
    assert r.limit == Cycle((0, 1)) and not r.reached_fixed_point and r.fixed_point is None
    assert r.to_dict()["limit"] == {"cycle": [0, 1]}


def test_fixed_point_sets():
    assert fixed_points(SelfMap.identity(3)) == {0, 1, 2}
    assert fixed_points(SelfMap.constant(3, 2)) == {2}
    assert fixed_points(SelfMap([1, 0])) == frozenset()


def test_plain_classification(three_point):
    sp, T = three_point
    assert classify_plain(sp, SelfMap.constant(3, 2)).picard_plain
    assert not classify_plain(sp, SelfMap.identity(3)).picard_plain
    c = classify_plain(sp, T)
    assert c.picard_plain and c.fixed_points == {0}
    assert all(simulate(T, x, 3)[-1] == 0 for x in range(3))


def test_ordered_classification_examples(three_point):
    anti = line_space([0, 1, 3], [])
    c = classify_ordered(anti, SelfMap.identity(3))
    assert c.leq_singleton and c.lower_image_set == (0, 1, 2) and c.picard_ordered

    chain = line_space([0, 1], [(0, 1)])
    c = classify_ordered(chain, SelfMap.identity(2))
    assert not c.leq_singleton and not c.picard_ordered
    assert c.witnesses["comparable_fixed_points"] == [0, 1]

    sp, T = three_point
    rev = line_space([0, 1, 3], [(2, 1), (1, 0)])
    c = classify_ordered(rev, T)
    assert c.lower_image_set == (0, 1, 2) and c.picard_ordered and c.fixed_points == {0}
    assert c.maximality_ok


def test_maximality_reported_separately():
    # 0 is fixed, 1 <= T1 = 2 and 0 <= 1, so 0 is not maximal among {x : x <= Tx}
    sp = line_space([0, 1, 2], [(0, 1), (1, 2)])
    c = classify_ordered(sp, SelfMap([0, 2, 2]))
    assert not c.maximality_ok and c.witnesses["maximality"][0] == 0


def test_named_report_leaves_counts_alone():
    # two fixed points on two points: the fixed-point count equals n and is not a point id
    c = classify_plain(line_space([0, 1], [(0, 1)]), SelfMap.identity(2))
    d = c.to_dict(("a", "b"))
    assert d["witnesses"]["plain_fix_size"] == 2
    assert d["witnesses"]["comparable_fixed_points"] == ["a", "b"]


def test_image_sets(three_point):
    sp, T = three_point
    assert lower_image_set(sp, T) == (0,)
    assert comparable_image_set(sp, T) == (0, 1, 2)


def test_self_closed_examples():
    chain = line_space([0, 1, 2], [(0, 1), (1, 2)])
    assert check_ao_self_closed(chain, SelfMap([1, 2, 2])).holds
    q = make_space([[0, 1], [1, 0]], [(0, 1), (1, 0)], kind="quasi")
    rep = check_ao_self_closed(q, SelfMap([1, 1]))
    assert rep.holds and rep.checked_orbits == (0, 1)
    none = check_ao_self_closed(line_space([0, 1], []), SelfMap([1, 0]))
    assert none.holds and none.checked_orbits == ()


def test_a06_is_automatic():
    for sp in (line_space([0, 1, 2], []), line_space([0, 1, 2], [(0, 1), (1, 2)])):
        assert check_a06(sp, [(0, 1, 1)]) == (True, FINITE_SPACE_NOTE)


@given(spaces_with_maps())
def test_orbits_are_deterministic_and_bounded(sm):
    sp, T = sm
    for x in range(sp.size):
        r = picard_orbit(sp, T, x)
        assert r == picard_orbit(sp, T, x)
        assert r.steps_to_limit <= sp.size
        raw = simulate(T, x, 2 * sp.size)
        assert list(r.orbit) == raw[: len(r.orbit)]
        if r.reached_fixed_point:
            assert raw[-1] == r.limit
        else:
            assert raw[-1] in r.limit.points


@given(spaces_with_maps())
def test_total_connected_contractions_are_picard(sm):
    sp, T = sm
    C = sp.comparability()
    if C.all() and ordered_contraction_factor(sp, T).alpha_star < 1:
        assert chain_components(sp).connected
        assert classify_plain(sp, T).picard_plain


@given(spaces_with_maps())
def test_comparable_fixed_points_block_weak_G(sm):
    sp, T = sm
    if not classify_ordered(sp, T).leq_singleton:
        for a in np.linspace(0.01, 0.99, 25).tolist() + list(T5_ALPHA_GRID):
            assert not check_weak_conditional_G_contractive(sp, T, a).verdict
