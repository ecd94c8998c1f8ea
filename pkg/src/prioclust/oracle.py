"""Exhaustive ground truth for small instances.

Deliberately shares no coverage code with the solvers: distances are read
straight from the raw matrix and every subset is scored from scratch.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .contact import ContactGraph
from .instance import Instance, candidate_alphas

MAX_FACILITIES = 20
MAX_PATHS = 12


class OracleGuardExceeded(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    optimal_alpha: Fraction
    witness: tuple[str, ...]
    enumerated: int


def subset_alpha(inst: Instance, subset) -> Fraction | None:
    """Smallest alpha at which ``subset`` covers m_i clients of each color."""
    nc = len(inst.clients)
    need = list(inst.requirements)
    if not any(need):
        return Fraction(0)
    if not subset:
        return None
    per_color: dict[int, list[Fraction]] = {}
    for i, client in enumerate(inst.clients):
        best = min(inst.dist[i][nc + f] for f in subset)
        per_color.setdefault(client.color, []).append(best / client.radius)
    alpha = Fraction(0)
    for color, m_i in enumerate(need, start=1):
        if m_i == 0:
            continue
        ratios = sorted(per_color[color])
        alpha = max(alpha, ratios[m_i - 1])
    return alpha


def brute_force_opt(inst: Instance, constraint: str = "cardinality") -> OracleResult:
    nf = len(inst.facilities)
    if nf > MAX_FACILITIES:
        raise OracleGuardExceeded(f"{nf} facilities exceed the oracle guard of {MAX_FACILITIES}")
    if constraint == "cardinality":
        size = min(inst.k, nf)
        subsets = itertools.combinations(range(nf), size)
    elif constraint == "knapsack":
        subsets = (s for r in range(nf + 1) for s in itertools.combinations(range(nf), r)
                   if sum(inst.facilities[f].weight for f in s) <= inst.k)
    else:
        raise ValueError(f"unknown constraint {constraint!r}")
    best, witness, count = None, None, 0
    for s in subsets:
        count += 1
        a = subset_alpha(inst, s)
        if a is not None and (best is None or a < best):
            best, witness = a, s
    if best is None:
        from .errors import Infeasible
        raise Infeasible("no feasible facility subset meets the requirements")
    if not any(inst.requirements):
        # every requirement is empty: report the smallest candidate
        cands = candidate_alphas(inst)
        best = cands[0] if cands else Fraction(0)
    return OracleResult(best, tuple(inst.facilities[f].id for f in witness), count)


def _maximal_dag_paths(g: ContactGraph) -> list[tuple[int, ...]]:
    succ: dict[int, list[int]] = {v: [] for v in g.nodes}
    indeg = {v: 0 for v in g.nodes}
    for a, b in g.edges:
        succ[a].append(b)
        indeg[b] += 1
    out = []

    def walk(path):
        nxt = succ[path[-1]]
        if not nxt:
            out.append(tuple(path))
            return
        for b in nxt:
            walk(path + [b])

    for v in g.nodes:
        if indeg[v] == 0:
            walk([v])
    return out


def brute_force_path_packing(g: ContactGraph, budget: int, mode: str = "count") -> int:
    """Exact packing optimum by enumeration.

    ``count``: at most ``budget`` maximal paths of a DAG.
    ``weight``: any set of sinks in a forest with total sink weight at most
    ``budget``; each sink covers itself and all its ancestors.
    """
    if not g.nodes:
        return 0
    value = {v: sum(n.lam) for v, n in g.nodes.items()}
    if mode == "count":
        paths = _maximal_dag_paths(g)
        if len(paths) > MAX_PATHS:
            raise OracleGuardExceeded(f"{len(paths)} maximal paths exceed {MAX_PATHS}")
        best = 0
        for r in range(min(budget, len(paths)) + 1):
            for combo in itertools.combinations(paths, r):
                union = set().union(*combo) if combo else set()
                best = max(best, sum(value[v] for v in union))
        return best
    if mode == "weight":
        parent = {b: a for a, b in g.edges}
        leaves = [v for v in g.nodes if not any(a == v for a, _ in g.edges)]
        if len(leaves) > MAX_PATHS:
            raise OracleGuardExceeded(f"{len(leaves)} leaves exceed {MAX_PATHS}")
        chain = {}
        for v in g.nodes:
            c, x = [], v
            while x is not None:
                c.append(x)
                x = parent.get(x)
            chain[v] = frozenset(c)
        sinks = [v for v in g.nodes if g.nodes[v].weight is not None]
        best = 0

        def search(i, left, covered):
            nonlocal best
            best = max(best, sum(value[v] for v in covered))
            for j in range(i, len(sinks)):
                w = g.nodes[sinks[j]].weight
                if w <= left:
                    search(j + 1, left - w, covered | chain[sinks[j]])

        search(0, budget, frozenset())
        return best
    raise ValueError(f"unknown mode {mode!r}")
