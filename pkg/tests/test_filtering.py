import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import R, random_instance, seeds
from oracles import check_filter_invariants
from prioclust.filtering import (alternating_order, build_layer_plan, filter_clusters,
                                 radius_class)
from prioclust.generate import line_instance


def test_single_client():
    inst = line_instance([0], [0], [1], k=1, requirements=[1])
    fam = filter_clusters(inst, [0], inst.radii, {0: Fraction(1)})
    assert fam.representatives == (0,) and fam.cluster == {0: (0,)}


def test_equal_cov_ties_go_to_smaller_id():
    inst = line_instance([5, 0], [0], [1, 1], k=1, requirements=[1])
    fam = filter_clusters(inst, [0, 1], inst.radii, {0: Fraction(1, 2), 1: Fraction(1, 2)})
    # c00 sits at 5, c01 at 0; d = 5 > 2, so both survive, c00 first
    assert fam.representatives == (0, 1)
    assert fam.cluster == {0: (0,), 1: (1,)}


def test_line_hand_trace():
    inst = line_instance([0, 1, 3], [0], [1, 1, 1], k=1, requirements=[1])
    cov = {0: Fraction(9, 10), 1: Fraction(8, 10), 2: Fraction(7, 10)}
    fam = filter_clusters(inst, [0, 1, 2], inst.radii, cov)
    assert fam.representatives == (0, 2)
    assert fam.cluster[0] == (0, 1) and fam.cluster[2] == (2,)


def test_slack_merges_more():
    inst = line_instance([0, 3], [0], [1, 1], k=1, requirements=[1])
    cov = {0: Fraction(1), 1: Fraction(0)}
    assert len(filter_clusters(inst, [0, 1], inst.radii, cov).representatives) == 2
    assert len(filter_clusters(inst, [0, 1], inst.radii, cov, 1).representatives) == 1


def test_empty_input():
    inst = line_instance([0], [0], [1], k=1, requirements=[1])
    fam = filter_clusters(inst, [], inst.radii, {})
    assert fam.representatives == () and fam.cluster == {}


def test_radius_class_boundaries():
    assert radius_class(Fraction(1), Fraction(3)) == 1
    assert radius_class(Fraction(17, 10), Fraction(3)) == 1     # 2.89 < 3
    assert radius_class(Fraction(7, 4), Fraction(3)) == 2       # 3.0625 >= 3
    assert radius_class(Fraction(3), Fraction(3)) == 3          # 9 = 3^2 starts class 3
    assert radius_class(Fraction(4), Fraction(16)) == 2
    assert radius_class(Fraction(63, 16), Fraction(16)) == 1
    with pytest.raises(ValueError):
        radius_class(Fraction(1, 2), Fraction(3))


def test_alternating_orders():
    assert alternating_order(1) == ((1,), 0)
    assert alternating_order(2) == ((2, 1), 1)
    assert alternating_order(3) == ((2, 1, 3), 1)
    assert alternating_order(4) == ((4, 2, 1, 3), 2)
    assert alternating_order(5) == ((4, 2, 1, 3, 5), 2)


@given(st.integers(1, 12))
def test_alternating_order_shape(t):
    order, middle = alternating_order(t)
    assert sorted(order) == list(range(1, t + 1))
    assert order[middle] == 1
    if t > 1:
        assert order[middle - 1] == 2
    # each side steps by two classes away from the middle
    for p in range(middle):
        assert order[p] - order[p + 1] in (1, 2)
    for p in range(middle + 1, t - 1):
        assert order[p + 1] - order[p] == 2


def test_layer_plans():
    norm = R(1, 1, 1)
    plan = build_layer_plan(norm, Fraction(3))
    assert plan.order == (1,) and plan.middle == 0 and plan.classes == {1: (0, 1, 2)}
    norm = R(1, 2, 4, 6)                  # classes 1, 2, 3, 4 for b = sqrt 3
    plan = build_layer_plan(norm, Fraction(3))
    assert plan.order == (4, 2, 1, 3) and plan.middle == 2
    assert plan.layers() == [(3,), (1,), (0,), (2,)]
    asc = build_layer_plan(R(1, 5, 17), Fraction(16), "ascending")
    assert asc.order == (1, 2, 3) and asc.position_of_class() == {1: 0, 2: 1, 3: 2}
    with pytest.raises(ValueError):
        build_layer_plan(norm, Fraction(1))


@given(seeds, st.sampled_from([Fraction(3), Fraction(4), Fraction(16)]))
def test_layer_plan_partitions(seed, b2):
    rng = random.Random(seed)
    norm = [Fraction(rng.randint(1, 400), rng.randint(1, 4)) for _ in range(15)]
    lo = min(norm)
    norm = [r / lo for r in norm]
    plan = build_layer_plan(norm, b2)
    seen = sorted(v for layer in plan.layers() for v in layer)
    assert seen == list(range(15))
    for i, members in plan.classes.items():
        for v in members:
            r2 = norm[v] ** 2
            assert b2 ** (i - 1) <= r2 < b2 ** i


@given(seeds, st.integers(0, 3))
def test_filter_invariants_property(seed, power):
    inst = random_instance(seed, n_clients=14, radius_set=R(1, 2, 3))
    rng = random.Random(seed)
    cov = {v: Fraction(rng.randint(0, 4), 4) for v in range(inst.n_clients)}
    clients = [v for v in range(inst.n_clients) if rng.random() < 0.8]
    fam = filter_clusters(inst, clients, inst.radii, cov, Fraction(4) ** power if power else 0)
    check_filter_invariants(inst, clients, inst.radii, cov, fam)
