"""Path packing on contact graphs.

* cardinality packing on a DAG (min-cost flow on the split-node network),
* knapsack packing on an out-forest (tree dynamic program),
* colorful packing on an out-forest (LP vertex + round-up of positive leaves).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .contact import ContactGraph
from .errors import InvariantViolation, PreconditionError
from .lp import GE, LE, OPTIMAL, LpProblem, VertexSolution, solve_lp


@dataclass(frozen=True)
class PathPacking:
    paths: tuple[tuple[int, ...], ...]
    value: int
    value_per_color: tuple[int, ...]
    budget_used: int

    def covered_nodes(self) -> set[int]:
        return {v for p in self.paths for v in p}


def packing_from_paths(g: ContactGraph, paths, budget_used: int) -> PathPacking:
    """Value counts each node once, however many paths pass through it."""
    paths = tuple(tuple(p) for p in paths)
    union = {v for p in paths for v in p}
    n_colors = len(next(iter(g.nodes.values())).lam) if g.nodes else 1
    per_color = [0] * n_colors
    for v in union:
        for i, x in enumerate(g.nodes[v].lam):
            per_color[i] += x
    return PathPacking(paths, sum(per_color), tuple(per_color), budget_used)


# -- cardinality packing: min-cost flow ---------------------------------------

class _FlowNetwork:
    """Residual network with integer capacities and costs."""

    def __init__(self, n: int):
        self.adj: list[list[list]] = [[] for _ in range(n)]   # arc = [to, cap, cost, rev]
        self.arcs: list[tuple[int, int, list, int]] = []      # (tail, head, arc, capacity)

    def add_arc(self, a: int, b: int, cap: int, cost: int) -> list:
        fwd = [b, cap, cost, len(self.adj[b])]
        back = [a, 0, -cost, len(self.adj[a])]
        self.adj[a].append(fwd)
        self.adj[b].append(back)
        self.arcs.append((a, b, fwd, cap))
        return fwd

    def flow(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for a, b, arc, cap in self.arcs:
            if cap - arc[1]:
                out[(a, b)] = out.get((a, b), 0) + cap - arc[1]
        return out

    def shortest_path(self, s: int):
        """Bellman-Ford on the residual graph (it carries negative costs but,
        at a min-cost flow, no negative cycles)."""
        n = len(self.adj)
        dist = [None] * n
        prev = [None] * n
        dist[s] = 0
        for _ in range(n):
            changed = False
            for a in range(n):
                if dist[a] is None:
                    continue
                for idx, (b, cap, cost, _) in enumerate(self.adj[a]):
                    if cap > 0 and (dist[b] is None or dist[a] + cost < dist[b]):
                        dist[b] = dist[a] + cost
                        prev[b] = (a, idx)
                        changed = True
            if not changed:
                break
        else:
            raise InvariantViolation("negative cycle in residual network")
        return dist, prev

    def augment(self, s: int, t: int, prev) -> None:
        node = t
        while node != s:
            a, arc_i = prev[node]
            arc = self.adj[a][arc_i]
            arc[1] -= 1
            self.adj[node][arc[3]][1] += 1
            node = a


def _zero(g: ContactGraph) -> tuple[int, ...]:
    n_colors = len(next(iter(g.nodes.values())).lam) if g.nodes else 1
    return (0,) * n_colors


def solve_wkpp(g: ContactGraph, k: int) -> PathPacking:
    """Best value of at most k paths in a DAG, values counted once per node.

    Successive shortest paths, one unit per augmentation, stopping early once
    no augmenting path has negative cost. Node v becomes arcs v1 -> v2 (one of
    capacity 1 and cost -value, one free); s feeds every v1, every v2 drains
    to t, and each contact edge (u, v) becomes u2 -> v1.
    """
    if g.kind != "dag":
        raise PreconditionError("cardinality path packing expects a contact DAG")
    if k <= 0 or not g.nodes:
        return PathPacking((), 0, _zero(g), 0)
    order = g.topological()
    idx = {v: i for i, v in enumerate(order)}
    S, T = 0, 1
    net = _FlowNetwork(2 + 2 * len(order))
    cap = k                                   # any capacity >= k is effectively infinite
    unit_arcs = {}
    for v, i in idx.items():
        v1, v2 = 2 + 2 * i, 3 + 2 * i
        unit_arcs[v] = net.add_arc(v1, v2, 1, -g.nodes[v].value)
        net.add_arc(v1, v2, cap, 0)
        net.add_arc(S, v1, cap, 0)
        net.add_arc(v2, T, cap, 0)
    for (u, v) in sorted(g.edges, key=lambda e: (idx[e[0]], idx[e[1]])):
        net.add_arc(3 + 2 * idx[u], 2 + 2 * idx[v], cap, 0)

    for _ in range(k):
        dist, prev = net.shortest_path(S)
        if dist[T] is None or dist[T] >= 0:
            break
        net.augment(S, T, prev)

    flow = net.flow()
    if sum(f for (a, _), f in flow.items() if a == S) > k:
        raise InvariantViolation("flow exceeds k")

    def branch_key(x):
        return (1, "") if x == T else (0, g.nodes[order[(x - 2) // 2]].key)

    paths = []
    while any(a == S for (a, _) in flow):
        path_nodes, cur = [], S
        while cur != T:
            nxt = min((b for (a, b) in flow if a == cur), key=branch_key)
            flow[(cur, nxt)] -= 1
            if not flow[(cur, nxt)]:
                del flow[(cur, nxt)]
            if nxt != T and nxt % 2 == 0:
                path_nodes.append(order[(nxt - 2) // 2])
            cur = nxt
        paths.append(tuple(path_nodes))
    packing = packing_from_paths(g, paths, len(paths))
    flow_value = sum(g.nodes[v].value for v, arc in unit_arcs.items() if arc[1] == 0)
    if packing.value != flow_value:
        raise InvariantViolation("flow cost disagrees with path union value")
    return packing


# -- knapsack packing: tree DP --------------------------------------------------

def _best(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if a >= b else b


def _add(a, b):
    return None if a is None or b is None else a + b


def solve_wknappp(g: ContactGraph, budget: int) -> PathPacking:
    """Best value of paths whose sinks' weights sum to at most ``budget``.

    Any node may be a sink; a node is covered iff some chosen sink lies in
    its subtree. Nodes with ``weight is None`` cannot be sinks.
    """
    if g.kind != "forest":
        raise PreconditionError("knapsack path packing expects a contact forest")
    g.check_out_forest()
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    finite = sum(n.weight for n in g.nodes.values() if n.weight is not None)
    B = min(budget, finite)
    tables = {}

    def combine(left_any, left_ne, child):
        g_c, h_c = tables[child][0], tables[child][1]
        new_any = [None] * (B + 1)
        new_ne = [None] * (B + 1)
        for b in range(B + 1):
            best_any, best_ne = None, None
            for b2 in range(b + 1):
                b1 = b - b2
                best_any = _best(best_any, _add(left_any[b1], g_c[b2]))
                best_ne = _best(best_ne, _add(left_ne[b1], g_c[b2]))
                best_ne = _best(best_ne, _add(left_any[b1], h_c[b2]))
            new_any[b], new_ne[b] = best_any, best_ne
        return new_any, new_ne

    def solve(v: int):
        node = g.nodes[v]
        k_any, k_ne = [0] * (B + 1), [None] * (B + 1)
        steps = [(k_any, k_ne)]
        for c in g.children(v):
            solve(c)
            k_any, k_ne = combine(k_any, k_ne, c)
            steps.append((k_any, k_ne))
        h = [None] * (B + 1)
        for b in range(B + 1):
            best = k_ne[b]
            if node.weight is not None and node.weight <= b:
                best = _best(best, k_any[b - node.weight])
            h[b] = None if best is None else best + node.value
        gv = [_best(0, x) for x in h]
        tables[v] = (gv, h, steps)

    roots = g.roots()
    for r in roots:
        solve(r)
    top_any = [0] * (B + 1)
    top_steps = [top_any]
    for r in roots:
        gr = tables[r][0]
        top_any = [max(top_any[b - b2] + gr[b2] for b2 in range(b + 1)) for b in range(B + 1)]
        top_steps.append(top_any)

    sinks: list[int] = []

    def pick_g(v, b):
        h = tables[v][1]
        if h[b] is None or h[b] <= 0:
            return
        pick_h(v, b)

    def pick_h(v, b):
        _, h, steps = tables[v]
        node = g.nodes[v]
        target = h[b] - node.value
        kids = g.children(v)
        k_any, k_ne = steps[-1]
        if k_ne[b] is not None and k_ne[b] == target:
            unwind(kids, steps, b, need_nonempty=True)
            return
        if node.weight is None or node.weight > b or k_any[b - node.weight] != target:
            raise InvariantViolation("knapsack DP backtrack failed")
        sinks.append(v)
        unwind(kids, steps, b - node.weight, need_nonempty=False)

    def unwind(kids, steps, b, need_nonempty):
        for i in range(len(kids) - 1, -1, -1):
            c = kids[i]
            prev_any, prev_ne = steps[i]
            cur = steps[i + 1][1 if need_nonempty else 0][b]
            g_c, h_c, _ = tables[c]
            done = False
            for b2 in range(b + 1):
                b1 = b - b2
                if need_nonempty:
                    if _add(prev_ne[b1], g_c[b2]) == cur:
                        pick_g(c, b2)
                        b, done = b1, True
                        break
                    if _add(prev_any[b1], h_c[b2]) == cur:
                        pick_h(c, b2)
                        b, need_nonempty, done = b1, False, True
                        break
                elif _add(prev_any[b1], g_c[b2]) == cur:
                    pick_g(c, b2)
                    b, done = b1, True
                    break
            if not done:
                raise InvariantViolation("knapsack DP backtrack failed")

    b = B
    for i in range(len(roots) - 1, -1, -1):
        r = roots[i]
        gr = tables[r][0]
        for b2 in range(b + 1):
            if top_steps[i][b - b2] + gr[b2] == top_steps[i + 1][b]:
                pick_g(r, b2)
                b -= b2
                break
    paths = [tuple(reversed(g.ancestors(s))) for s in sinks]
    used = sum(g.nodes[s].weight for s in sinks)
    packing = packing_from_paths(g, paths, used)
    if packing.value != top_steps[-1][B]:
        raise InvariantViolation("knapsack DP value disagrees with reconstructed paths")
    return packing


# -- colorful packing: LP + rounding ------------------------------------------------

@dataclass
class WckppLp:
    problem: LpProblem
    y: dict[int, int]          # leaf -> variable index
    z: dict[int, int]          # internal node -> variable index


@dataclass(frozen=True)
class WckppVertex:
    y: dict[int, Fraction]
    z: dict[int, Fraction]
    objective: Fraction
    fractional_leaves: tuple[int, ...]
    solution: VertexSolution | None = None


def build_wckpp_lp(g: ContactGraph, requirements: Sequence[int], k: int) -> WckppLp:
    """Color 1 is the objective; colors 2..c become >= m_i rows."""
    if g.kind != "forest":
        raise PreconditionError("colorful path packing expects a contact forest")
    p = LpProblem()
    leaves = g.leaves()
    leaf_set = set(leaves)
    y, z = {}, {}
    for v in g.sorted_nodes():
        if v in leaf_set:
            y[v] = p.add_variable(f"y_{g.nodes[v].key}", 0, 1)
        else:
            z[v] = p.add_variable(f"z_{g.nodes[v].key}", 0, 1)

    def var(v):
        return y[v] if v in y else z[v]

    for i in range(1, len(requirements)):
        row = {var(v): g.nodes[v].lam[i] for v in g.nodes if g.nodes[v].lam[i]}
        p.add_constraint(row, GE, requirements[i], f"color{i + 1}")
    for v in z:
        row = {z[v]: 1}
        for u in g.subtree_leaves(v):
            row[y[u]] = -1
        p.add_constraint(row, LE, 0, f"cover_{g.nodes[v].key}")
    p.add_constraint({y[v]: 1 for v in y}, LE, k, "budget")
    p.set_objective({var(v): g.nodes[v].lam[0] for v in g.nodes if g.nodes[v].lam[0]}, "max")
    return WckppLp(p, y, z)


def solve_wckpp(g: ContactGraph, requirements: Sequence[int], k: int) -> WckppVertex | None:
    """Extreme-point optimum of the colorful packing LP, or None if infeasible."""
    lp = build_wckpp_lp(g, requirements, k)
    sol = solve_lp(lp.problem)
    if sol.status != OPTIMAL:
        return None
    y = {v: sol.values[j] for v, j in lp.y.items()}
    z = {v: sol.values[j] for v, j in lp.z.items()}
    frac = tuple(v for v in g.sorted_nodes() if v in y and 0 < y[v] < 1)
    return WckppVertex(y, z, sol.objective_value, frac, sol)


def round_wckpp(sol: WckppVertex, g: ContactGraph, max_fractional: int) -> PathPacking:
    """Open every leaf with positive LP value; the path is its root chain."""
    if len(sol.fractional_leaves) > max_fractional:
        raise InvariantViolation(
            f"{len(sol.fractional_leaves)} fractional leaves exceed the bound {max_fractional}")
    chosen = [v for v in g.sorted_nodes() if v in sol.y and sol.y[v] > 0]
    paths = [tuple(reversed(g.ancestors(v))) for v in chosen]
    return packing_from_paths(g, paths, len(chosen))


def split_depth2_forest(g: ContactGraph) -> ContactGraph:
    """Cut each root-plus-leaves tree down to one (root, best leaf) pair.

    The kept leaf maximizes color-1 value (ties: smaller id); the other
    leaves become singletons. Requires height <= 1 and no color-2 value on
    any non-root node.
    """
    if g.kind != "forest":
        raise PreconditionError("split expects a contact forest")
    for (a, b) in g.edges:
        if g.parent(a) is not None or g.children(b):
            raise PreconditionError("forest has height > 1")
        if len(g.nodes[b].lam) > 1 and g.nodes[b].lam[1] > 0:
            raise PreconditionError(f"leaf {g.nodes[b].key} carries color-2 value")
    edges = {}
    for r in g.roots():
        kids = g.children(r)
        if not kids:
            continue
        keep = min(kids, key=lambda u: (-g.nodes[u].lam[0], g.nodes[u].key))
        edges[(r, keep)] = g.edges[(r, keep)]
    return ContactGraph(dict(g.nodes), edges, "forest")
