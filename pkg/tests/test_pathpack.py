from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import seeds
from oracles import _node, basic_solutions, random_dag, random_forest
from prioclust.contact import ContactGraph
from prioclust.errors import InvariantViolation, PreconditionError
from prioclust.lp import OPTIMAL, rank_of_tight_set, solve_lp
from prioclust.oracle import brute_force_path_packing
from prioclust.pathpack import (WckppVertex, build_wckpp_lp, round_wckpp, solve_wckpp,
                                solve_wknappp, solve_wkpp, split_depth2_forest)


def dag(lams, positions, edges):
    nodes = {i: _node(i, p, [l]) for i, (l, p) in enumerate(zip(lams, positions))}
    return ContactGraph(nodes, {e: 0 for e in edges}, "dag")


def forest(layout, edges, colors=1):
    """layout: {node: (position, lam tuple or int, weight)}"""
    nodes = {}
    for i, (pos, lam, w) in layout.items():
        lam = lam if isinstance(lam, tuple) else (lam,)
        nodes[i] = _node(i, pos, lam, w)
    return ContactGraph(nodes, {e: 0 for e in edges}, "forest")


def assert_paths_valid(g, packing):
    for p in packing.paths:
        assert p
        for a, b in zip(p, p[1:]):
            assert (a, b) in g.edges
    union = {v for p in packing.paths for v in p}
    assert packing.value == sum(g.nodes[v].value for v in union)


# -- cardinality packing -------------------------------------------------------------

def test_wkpp_single_node():
    g = dag([5], [0], [])
    p = solve_wkpp(g, 1)
    assert p.paths == ((0,),) and p.value == 5


def test_wkpp_two_parallel_nodes():
    assert solve_wkpp(dag([3, 4], [0, 0], []), 1).value == 4


def test_wkpp_diamond():
    # a -> b, a -> c, b -> d, c -> d with values 1, 10, 10, 1
    g = dag([1, 10, 10, 1], [2, 1, 1, 0], [(0, 1), (0, 2), (1, 3), (2, 3)])
    p = solve_wkpp(g, 2)
    assert p.value == 22 and p.budget_used <= 2
    assert_paths_valid(g, p)
    assert brute_force_path_packing(g, 2) == 22


def test_wkpp_zero_budget():
    p = solve_wkpp(dag([3], [0], []), 0)
    assert p.paths == () and p.value == 0


def test_wkpp_requires_dag():
    with pytest.raises(PreconditionError):
        solve_wkpp(forest({0: (1, 1, 1)}, []), 1)


@given(seeds, st.integers(0, 4))
def test_wkpp_matches_enumeration(seed, k):
    g = random_dag(seed)
    p = solve_wkpp(g, k)
    assert p.value == brute_force_path_packing(g, k, "count")
    assert len(p.paths) <= k
    assert_paths_valid(g, p)


# -- knapsack packing ----------------------------------------------------------------

def test_wknappp_single_node_boundary():
    g = forest({0: (1, 7, 2)}, [])
    assert solve_wknappp(g, 1).value == 0
    assert solve_wknappp(g, 2).value == 7


def test_wknappp_star():
    g = forest({0: (2, 5, 9), 1: (1, 3, 1), 2: (1, 4, 1)}, [(0, 1), (0, 2)])
    assert solve_wknappp(g, 1).value == 9
    assert solve_wknappp(g, 2).value == 12
    assert brute_force_path_packing(g, 1, "weight") == 9
    assert brute_force_path_packing(g, 2, "weight") == 12


def test_wknappp_unreachable_sink_weight():
    g = forest({0: (2, 5, None), 1: (1, 3, None)}, [(0, 1)])
    assert solve_wknappp(g, 100).value == 0


def test_wknappp_internal_sink():
    # the cheap internal node is a valid sink even though its leaf is expensive
    g = forest({0: (2, 5, 1), 1: (1, 3, 9)}, [(0, 1)])
    p = solve_wknappp(g, 1)
    assert p.value == 5 and p.paths == ((0,),)


@given(seeds, st.integers(0, 25))
def test_wknappp_matches_enumeration(seed, budget):
    g = random_forest(seed)
    p = solve_wknappp(g, budget)
    assert p.value == brute_force_path_packing(g, budget, "weight")
    assert p.budget_used <= budget
    assert_paths_valid(g, p)
    assert p.budget_used == sum(g.nodes[path[-1]].weight for path in p.paths)


# -- colorful packing ----------------------------------------------------------------

def test_wckpp_three_node_path():
    g = forest({0: (3, 1, 1), 1: (2, 1, 1), 2: (1, 1, 1)}, [(0, 1), (1, 2)])
    lp = build_wckpp_lp(g, [0], 1)
    assert len(lp.problem.variables) == 3
    sol = solve_lp(lp.problem)
    assert sol.status == OPTIMAL and sol.objective_value == 3
    assert sol.values in basic_solutions(lp.problem)
    objs = {sum(a * x[j] for j, a in lp.problem.objective.items())
            for x in basic_solutions(lp.problem)}
    assert max(objs) == 3
    v = solve_wckpp(g, [0], 1)
    assert v.y == {2: 1} and v.z == {0: 1, 1: 1}
    assert round_wckpp(v, g, 2).value == 3


def test_wckpp_singleton_forest_has_one_budget_row():
    g = forest({0: (1, 2, 1), 1: (1, 3, 1)}, [])
    lp = build_wckpp_lp(g, [0], 1)
    assert [c.name for c in lp.problem.constraints] == ["budget"]
    assert solve_wckpp(g, [0], 1).objective == 3


def test_wckpp_demand_exceeds_supply():
    g = forest({0: (1, (1, 2), 1), 1: (1, (1, 1), 1)}, [], colors=2)
    assert solve_wckpp(g, [0, 4], 2) is None


def test_round_integral_vertex():
    g = forest({0: (1, 2, 1), 1: (1, 3, 1), 2: (1, 1, 1)}, [])
    v = solve_wckpp(g, [0], 2)
    assert not v.fractional_leaves
    assert round_wckpp(v, g, 2).budget_used <= 2


def test_round_two_fractional_leaves():
    g = forest({0: (1, 2, 1), 1: (1, 3, 1), 2: (1, 1, 1)}, [])
    v = WckppVertex({0: Fraction(1, 2), 1: Fraction(1), 2: Fraction(1, 2)}, {}, Fraction(4), (0, 2))
    assert round_wckpp(v, g, 2).budget_used == 3          # k + 2c - 1 with k = 2, c = 1


def test_round_rejects_too_many_fractional():
    g = forest({i: (1, 1, 1) for i in range(3)}, [])
    third = Fraction(1, 3)
    v = WckppVertex({0: third, 1: third, 2: third}, {}, Fraction(1), (0, 1, 2))
    with pytest.raises(InvariantViolation):
        round_wckpp(v, g, 2)


@given(seeds, st.integers(1, 3), st.integers(0, 4))
def test_wckpp_vertex_structure(seed, colors, k):
    g = random_forest(seed, colors=colors)
    total = [sum(n.lam[i] for n in g.nodes.values()) for i in range(colors)]
    reqs = [0] + [t // 2 for t in total[1:]]
    v = solve_wckpp(g, reqs, k)
    if v is None:
        return
    assert len(v.fractional_leaves) <= 2 * colors
    assert rank_of_tight_set(build_wckpp_lp(g, reqs, k).problem, v.solution) == len(g.nodes)
    packing = round_wckpp(v, g, 2 * colors)
    assert packing.budget_used <= k + 2 * colors - 1
    lp_value = [sum(g.nodes[u].lam[i] * val for u, val in {**v.y, **v.z}.items())
                for i in range(colors)]
    for i in range(colors):
        assert packing.value_per_color[i] >= lp_value[i]
        assert packing.value_per_color[i] >= reqs[i]
    union = {u for p in packing.paths for u in p}
    assert packing.value_per_color == tuple(sum(g.nodes[u].lam[i] for u in union)
                                            for i in range(colors))


# -- splitting -----------------------------------------------------------------------

def test_split_keeps_single_leaf_tree():
    g = forest({0: (2, (0, 3), 1), 1: (1, (2, 0), 1)}, [(0, 1)], colors=2)
    assert split_depth2_forest(g).edges == g.edges


def test_split_keeps_heavier_leaf():
    g = forest({0: (2, (0, 3), 1), 1: (1, (3, 0), 1), 2: (1, (7, 0), 1)}, [(0, 1), (0, 2)], colors=2)
    s = split_depth2_forest(g)
    assert set(s.edges) == {(0, 2)}
    assert sum(n.value for n in s.nodes.values()) == sum(n.value for n in g.nodes.values())


def test_split_ties_keep_smaller_id():
    g = forest({0: (2, (0, 3), 1), 1: (1, (5, 0), 1), 2: (1, (5, 0), 1)}, [(0, 2), (0, 1)], colors=2)
    for _ in range(3):
        assert set(split_depth2_forest(g).edges) == {(0, 1)}


def test_split_preconditions():
    deep = forest({0: (3, (0, 1), 1), 1: (2, (1, 0), 1), 2: (1, (1, 0), 1)}, [(0, 1), (1, 2)], colors=2)
    with pytest.raises(PreconditionError):
        split_depth2_forest(deep)
    colored = forest({0: (2, (0, 1), 1), 1: (1, (1, 1), 1)}, [(0, 1)], colors=2)
    with pytest.raises(PreconditionError):
        split_depth2_forest(colored)
