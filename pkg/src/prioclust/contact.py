"""Contact graphs over layer representatives."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InvariantViolation
from .filtering import ClusterFamily, LayerPlan
from .instance import Instance


@dataclass(frozen=True)
class Node:
    client: int                 # client index of the representative
    key: str                    # client id, used for deterministic ordering
    position: int               # layer position (dag) or class index (forest)
    radius: Fraction
    lam: tuple[int, ...]        # |D(v) ∩ C_i| per color
    cluster: tuple[int, ...]
    weight: int | None = None   # cheapest facility within r_v; None when none exists

    @property
    def value(self) -> int:
        return sum(self.lam)


@dataclass
class ContactGraph:
    nodes: dict[int, Node]
    edges: dict[tuple[int, int], object] = field(default_factory=dict)
    kind: str = "dag"

    def order_key(self, v: int) -> str:
        return self.nodes[v].key

    def successors(self, u: int) -> list[int]:
        return sorted((b for (a, b) in self.edges if a == u), key=self.order_key)

    def predecessors(self, v: int) -> list[int]:
        return sorted((a for (a, b) in self.edges if b == v), key=self.order_key)

    def sorted_nodes(self) -> list[int]:
        return sorted(self.nodes, key=self.order_key)

    def topological(self) -> list[int]:
        """Nodes from highest position to lowest; edges always point downward."""
        return sorted(self.nodes, key=lambda v: (-self.nodes[v].position, self.nodes[v].key))

    # forest helpers
    def parent(self, v: int) -> int | None:
        preds = [a for (a, b) in self.edges if b == v]
        return preds[0] if preds else None

    def children(self, u: int) -> list[int]:
        return self.successors(u)

    def roots(self) -> list[int]:
        has_parent = {b for (_, b) in self.edges}
        return [v for v in self.sorted_nodes() if v not in has_parent]

    def leaves(self) -> list[int]:
        has_child = {a for (a, _) in self.edges}
        return [v for v in self.sorted_nodes() if v not in has_child]

    def ancestors(self, v: int) -> list[int]:
        """``v`` and its ancestors, bottom-up (forest only)."""
        out = [v]
        parent = self.parent(v)
        while parent is not None:
            out.append(parent)
            parent = self.parent(parent)
        return out

    def subtree_leaves(self, v: int) -> list[int]:
        kids = self.children(v)
        if not kids:
            return [v]
        out = []
        for c in kids:
            out.extend(self.subtree_leaves(c))
        return out

    def check_out_forest(self) -> None:
        indeg: dict[int, int] = {}
        for (_, b) in self.edges:
            indeg[b] = indeg.get(b, 0) + 1
            if indeg[b] > 1:
                raise InvariantViolation(
                    f"contact forest node {self.nodes[b].key} has in-degree {indeg[b]}")

    def to_text(self) -> str:
        """One ``node`` line per node, one ``edge`` line per edge."""
        lines = [f"# contact {self.kind}"]
        for v in self.topological():
            n = self.nodes[v]
            lines.append(f"node {n.key} pos={n.position} lam={','.join(map(str, n.lam))}"
                         f" size={len(n.cluster)}" + ("" if n.weight is None else f" w={n.weight}"))
        for (a, b), w in sorted(self.edges.items(),
                                key=lambda e: (self.nodes[e[0][0]].key, self.nodes[e[0][1]].key)):
            lines.append(f"edge {self.nodes[a].key} {self.nodes[b].key} {w}")
        return "\n".join(lines) + "\n"


def _covering(inst: Instance, v: int, radii: Sequence[Fraction]) -> list[int]:
    rv = radii[v]
    return [f for f, d in enumerate(inst.cf[v]) if d <= rv]


def cheapest_facility(inst: Instance, v: int, radii: Sequence[Fraction]) -> int | None:
    """Minimum-weight facility within r_v of client v, ties by facility id."""
    options = _covering(inst, v, radii)
    if not options:
        return None
    return min(options, key=lambda f: (inst.facilities[f].weight, inst.facilities[f].id))


def first_facility(inst: Instance, v: int, radii: Sequence[Fraction]) -> int | None:
    options = _covering(inst, v, radii)
    return min(options, key=lambda f: inst.facilities[f].id) if options else None


def _make_nodes(inst: Instance, families: Sequence[ClusterFamily], positions: Sequence[int],
                radii: Sequence[Fraction], with_weight: bool) -> dict[int, Node]:
    nodes = {}
    for fam, pos in zip(families, positions):
        for v in fam.representatives:
            members = fam.cluster[v]
            lam = [0] * inst.colors
            for u in members:
                lam[inst.clients[u].color - 1] += 1
            weight = None
            if with_weight:
                f = cheapest_facility(inst, v, radii)
                weight = None if f is None else inst.facilities[f].weight
            nodes[v] = Node(v, inst.clients[v].id, pos, radii[v], tuple(lam), members, weight)
    return nodes


def build_contact_dag(plan: LayerPlan, families: Sequence[ClusterFamily], inst: Instance,
                      radii: Sequence[Fraction]) -> ContactGraph:
    """Edge u -> v (u in a higher layer position) iff one facility covers both
    within their radii; the witness is the smallest such facility id."""
    nodes = _make_nodes(inst, families, range(plan.t), radii, with_weight=False)
    cover = {v: set(_covering(inst, v, radii)) for v in nodes}
    fid = [f.id for f in inst.facilities]
    edges = {}
    for u in nodes:
        for v in nodes:
            if nodes[u].position <= nodes[v].position:
                continue
            shared = cover[u] & cover[v]
            if shared:
                edges[(u, v)] = min(shared, key=fid.__getitem__)
    return ContactGraph(nodes, edges, "dag")


def build_contact_forest(plan: LayerPlan, families: Sequence[ClusterFamily], inst: Instance,
                         radii: Sequence[Fraction], unit: Fraction = Fraction(1),
                         base: int = 4) -> ContactGraph:
    """Distance-rule contact graph with forward edges removed.

    ``plan`` must be ascending so that position p holds class p + 1. An edge
    u -> v (class of u above class of v = j) exists iff
    d(u, v) <= r_u + r_v + base**j * unit. An edge is then dropped whenever
    its head is also reachable through another out-neighbour of its tail.
    """
    classes = [plan.order[p] for p in range(plan.t)]
    nodes = _make_nodes(inst, families, classes, radii, with_weight=True)
    cc = inst.cc
    full: dict[int, list[int]] = {u: [] for u in nodes}
    bound = {}
    for u in nodes:
        for v in nodes:
            cu, cv = nodes[u].position, nodes[v].position
            if cu <= cv:
                continue
            limit = radii[u] + radii[v] + Fraction(base) ** cv * unit
            if cc[u][v] <= limit:
                full[u].append(v)
                bound[(u, v)] = limit
    reach: dict[int, set[int]] = {}
    for u in sorted(nodes, key=lambda v: nodes[v].position):
        r = set()
        for w in full[u]:
            r.add(w)
            r |= reach[w]
        reach[u] = r
    edges = {}
    for u in nodes:
        for v in full[u]:
            if any(v in reach[w] for w in full[u] if w != v):
                continue
            edges[(u, v)] = bound[(u, v)]
    g = ContactGraph(nodes, edges, "forest")
    g.check_out_forest()
    return g


def middle_edge_of_path(path: Sequence[int], graph: ContactGraph, middle: int):
    """Where to open a facility for a DAG path.

    Returns ``("edge", (a, b))`` for the consecutive pair straddling the
    middle position, or ``("node", v)`` with the endpoint nearest the middle
    when the whole path lies on one side.
    """
    if not path:
        raise ValueError("empty path")
    pos = [graph.nodes[v].position for v in path]
    for a in range(len(path) - 1):
        if pos[a] >= middle > pos[a + 1]:
            return "edge", (path[a], path[a + 1])
    if len(path) == 1:
        return "node", path[0]
    if pos[-1] >= middle:
        return "node", path[-1]
    return "node", path[0]


def singleton_forest(family: ClusterFamily, inst: Instance, radii: Sequence[Fraction]) -> ContactGraph:
    """Every representative as its own one-node tree."""
    nodes = _make_nodes(inst, [family], [1], radii, with_weight=True)
    return ContactGraph(nodes, {}, "forest")
