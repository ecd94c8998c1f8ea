"""Clustering solvers, each run at the smallest alpha whose relaxation is feasible.

Every solver has the same two halves: ``decide(alpha)`` answers whether the
LP relaxation with radii ``alpha * r_v`` is feasible (returning whatever the
rounding needs), and ``round_at(alpha, state)`` turns that fractional point
into an opened facility set. :func:`decision_search` glues them together.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import bounds
from .bounds import Guarantee
from .contact import (ContactGraph, build_contact_dag, build_contact_forest, cheapest_facility,
                      first_facility, middle_edge_of_path, singleton_forest)
from .errors import Infeasible, InvariantViolation, PreconditionError, Undecided
from .filtering import (ClusterFamily, LayerPlan, alternating_order, build_layer_plan,
                        filter_clusters)
from .instance import Instance, candidate_alphas, format_rational, normalized_radii
from .lp import GE, LE, OPTIMAL, LpProblem, solve_lp
from .pathpack import (PathPacking, round_wckpp, solve_wckpp, solve_wknappp, solve_wkpp,
                       split_depth2_forest)

PKSO_BASE_SQUARED = Fraction(3)      # b = sqrt 3 minimizes (2b^3 + b^2 - 1)/(b^2 - 1)
FOREST_BASE = 4
EXPLICIT_MAX_FACILITIES = 15
DEFAULT_CUT_CAP = 500


# -- results ------------------------------------------------------------------

@dataclass(frozen=True)
class TraceEntry:
    path: tuple[str, ...]       # representative client ids, in path order
    facility: str
    rule: str

    def to_dict(self) -> dict:
        return {"path": list(self.path), "facility": self.facility, "rule": self.rule}


@dataclass(frozen=True)
class RatioCertificate:
    lp_alpha: Fraction
    guarantee: str
    factor: bounds.Surd
    check: bool

    def to_dict(self) -> dict:
        f = self.factor
        return {"lp_alpha": format_rational(self.lp_alpha), "guarantee": self.guarantee,
                "factor": {"a": format_rational(f.a), "b": format_rational(f.b),
                           "s": format_rational(f.s)},
                "pass": self.check}


@dataclass(frozen=True)
class Solution:
    algorithm: str
    opened: tuple[str, ...]
    alpha: Fraction
    realized_ratio: Fraction
    covered_per_color: tuple[int, ...]
    centers_used: int
    weight_used: int
    trace: tuple[TraceEntry, ...]
    certificate: RatioCertificate
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "alpha": format_rational(self.alpha),
            "opened": list(self.opened),
            "realized_ratio": format_rational(self.realized_ratio),
            "covered_per_color": list(self.covered_per_color),
            "centers_used": self.centers_used,
            "weight_used": self.weight_used,
            "trace": [t.to_dict() for t in self.trace],
            "certificate": self.certificate.to_dict(),
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"


# -- shared plumbing ------------------------------------------------------------

@dataclass
class AlphaState:
    """Scaled radii, reachable facilities and an LP coverage point at one alpha."""
    alpha: Fraction
    radii: tuple[Fraction, ...]
    reach: tuple[tuple[int, ...], ...]          # client -> facilities within alpha * r_v
    clients: tuple[int, ...]                    # clients with a nonempty reach
    cov: dict[int, Fraction] = field(default_factory=dict)
    extra: dict = field(default_factory=dict)


def alpha_state(inst: Instance, alpha: Fraction) -> AlphaState:
    radii = tuple(alpha * r for r in inst.radii)
    reach = tuple(tuple(f for f, d in enumerate(row) if d <= radii[v])
                  for v, row in enumerate(inst.cf))
    clients = tuple(v for v in range(len(inst.clients)) if reach[v])
    return AlphaState(alpha, radii, reach, clients)


def _enough_reachable(inst: Instance, st: AlphaState) -> bool:
    counts = [0] * inst.colors
    for v in st.clients:
        counts[inst.clients[v].color - 1] += 1
    return all(c >= m for c, m in zip(counts, inst.requirements))


def coverage_lp(inst: Instance, st: AlphaState) -> tuple[LpProblem, dict[int, int]]:
    """x_f in [0,1], cov(v) <= sum of x_f over f within alpha * r_v,
    sum x_f <= k and one coverage row per color."""
    p = LpProblem()
    x = [p.add_variable(f"x_{f.id}", 0, 1) for f in inst.facilities]
    cov = {v: p.add_variable(f"cov_{inst.clients[v].id}", 0, 1) for v in st.clients}
    for v in st.clients:
        row = {cov[v]: 1}
        for f in st.reach[v]:
            row[x[f]] = -1
        p.add_constraint(row, LE, 0, f"reach_{inst.clients[v].id}")
    if x:
        p.add_constraint({j: 1 for j in x}, LE, inst.k, "budget")
    for i, m_i in enumerate(inst.requirements):
        if m_i:
            row = {cov[v]: 1 for v in st.clients if inst.clients[v].color == i + 1}
            p.add_constraint(row, GE, m_i, f"color{i + 1}")
    p.set_objective({}, "feasibility")
    return p, cov


def decide_coverage_lp(inst: Instance, alpha: Fraction) -> AlphaState | None:
    st = alpha_state(inst, alpha)
    if not _enough_reachable(inst, st):
        return None
    if not st.clients:
        return st                       # nothing to cover and nothing required
    p, cov = coverage_lp(inst, st)
    sol = solve_lp(p)
    if sol.status != OPTIMAL:
        return None
    st.cov = {v: sol.values[j] for v, j in cov.items()}
    return st


def decision_search(inst: Instance, decide: Callable[[Fraction], object | None],
                    round_at: Callable[[Fraction, object], Solution]) -> Solution:
    """Binary search over the sorted candidate alphas for the smallest one
    accepted by ``decide``; the rounding runs once, at that alpha."""
    cands = candidate_alphas(inst)
    if not cands:
        if any(inst.requirements):
            raise Infeasible("no client-facility pair exists, yet coverage is required")
        cands = [Fraction(0)]
    state = decide(cands[-1])
    if state is None:
        raise Infeasible(f"relaxation infeasible even at the largest candidate alpha "
                         f"{format_rational(cands[-1])}; requirements "
                         f"{list(inst.requirements)} cannot be met with k={inst.k}")
    lo, hi = -1, len(cands) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        s = decide(cands[mid])
        if s is None:
            lo = mid
        else:
            hi, state = mid, s
    return round_at(cands[hi], state)


def objective_of(inst: Instance, opened: Sequence[int]) -> tuple[Fraction, tuple[int, ...]]:
    """Objective value of an opened set and per-color coverage at that value."""
    need = inst.requirements
    if not opened:
        if any(need):
            raise InvariantViolation("nothing opened but coverage is required")
        return Fraction(0), tuple(0 for _ in need)
    ratio = [min(inst.cf[v][f] for f in opened) / c.radius for v, c in enumerate(inst.clients)]
    realized = Fraction(0)
    for i, m_i in enumerate(need):
        if m_i:
            col = sorted(ratio[v] for v in inst.color_classes[i])
            realized = max(realized, col[m_i - 1])
    covered = tuple(sum(1 for v in inst.color_classes[i] if ratio[v] <= realized)
                    for i in range(inst.colors))
    return realized, covered


def _finish(inst: Instance, algorithm: str, alpha: Fraction, opened: Sequence[int],
            trace: Sequence[TraceEntry], claimed: set[int], guarantee: Guarantee,
            center_cap: int | None, details: dict | None = None) -> Solution:
    opened = sorted(set(opened), key=lambda f: inst.facilities[f].id)
    # the rounding's own accounting must already meet every requirement
    for i, m_i in enumerate(inst.requirements):
        got = sum(1 for v in claimed if inst.clients[v].color == i + 1)
        if got < m_i:
            raise InvariantViolation(f"{algorithm}: rounding covers {got} < {m_i} clients "
                                     f"of color {i + 1}")
    if center_cap is not None and len(opened) > center_cap:
        raise InvariantViolation(f"{algorithm}: opened {len(opened)} > {center_cap} centers")
    realized, covered = objective_of(inst, opened)
    cert = RatioCertificate(alpha, guarantee.tag, guarantee.factor,
                            guarantee.holds(realized, alpha))
    return Solution(algorithm, tuple(inst.facilities[f].id for f in opened), alpha, realized,
                    covered, len(opened), sum(inst.facilities[f].weight for f in opened),
                    tuple(trace), cert, dict(details or {}))


def _claimed(families: Sequence[ClusterFamily], reps) -> set[int]:
    clusters = {}
    for fam in families:
        clusters.update(fam.cluster)
    return {u for v in reps for u in clusters[v]}


def _path_ids(inst: Instance, path) -> tuple[str, ...]:
    return tuple(inst.clients[v].id for v in path)


def _require_single_color(inst: Instance, name: str) -> None:
    if inst.colors != 1:
        raise PreconditionError(f"{name} needs a single-color instance (got c={inst.colors})")


def _distinct_radii(inst: Instance) -> list[Fraction]:
    return sorted(set(inst.radii))


# -- k-supplier with outliers (uniform radii) ----------------------------------------

def solve_ksupplier_outliers(inst: Instance) -> Solution:
    _require_single_color(inst, "k-supplier with outliers")
    if len(_distinct_radii(inst)) > 1:
        raise PreconditionError("k-supplier with outliers needs all radii equal")

    def round_at(alpha, st: AlphaState) -> Solution:
        fam = filter_clusters(inst, st.clients, st.radii, st.cov)
        rank = {v: i for i, v in enumerate(fam.representatives)}
        chosen = sorted(fam.representatives, key=lambda v: (-len(fam.cluster[v]), rank[v]))
        chosen = chosen[:inst.k]
        opened, trace = [], []
        for v in chosen:
            f = first_facility(inst, v, st.radii)
            opened.append(f)
            trace.append(TraceEntry(_path_ids(inst, [v]), inst.facilities[f].id, "largest-cluster"))
        return _finish(inst, "ksupplier-outliers", alpha, opened, trace,
                       _claimed([fam], chosen), bounds.THREE, inst.k)

    return decision_search(inst, lambda a: decide_coverage_lp(inst, a), round_at)


# -- layered contact DAG solvers ----------------------------------------------------

def dag_rounding(inst: Instance, st: AlphaState, class_of: Sequence[int]):
    """Alternating layering of the given classes, filter per layer, k-path
    packing on the contact DAG, one facility per path at its middle edge."""
    t = max((class_of[v] for v in st.clients), default=1)
    order, middle = alternating_order(t)
    classes: dict[int, list[int]] = {}
    for v in st.clients:
        classes.setdefault(class_of[v], []).append(v)
    plan = LayerPlan({c: tuple(vs) for c, vs in classes.items()}, order, None, middle)
    families = [filter_clusters(inst, layer, st.radii, st.cov) for layer in plan.layers()]
    g = build_contact_dag(plan, families, inst, st.radii)
    packing = solve_wkpp(g, inst.k)
    opened, trace = [], []
    for path in packing.paths:
        kind, where = middle_edge_of_path(path, g, plan.middle)
        if kind == "edge":
            f, rule = g.edges[where], "middle-edge"
        else:
            f, rule = first_facility(inst, where, st.radii), "endpoint"
        opened.append(f)
        trace.append(TraceEntry(_path_ids(inst, path), inst.facilities[f].id, rule))
    return opened, trace, _claimed(families, packing.covered_nodes()), g, packing


def _dag_solver(inst: Instance, algorithm: str, class_of: Sequence[int], guarantee: Guarantee,
                details: dict | None = None) -> Solution:
    def round_at(alpha, st: AlphaState) -> Solution:
        opened, trace, claimed, _, _ = dag_rounding(inst, st, class_of)
        return _finish(inst, algorithm, alpha, opened, trace, claimed, guarantee, inst.k, details)

    return decision_search(inst, lambda a: decide_coverage_lp(inst, a), round_at)


def _classes_by_base(inst: Instance, base_squared: Fraction) -> list[int]:
    plan = build_layer_plan(normalized_radii(inst), base_squared, "ascending")
    class_of = [0] * len(inst.clients)
    for c, members in plan.classes.items():
        for v in members:
            class_of[v] = c
    return class_of


def solve_pkso(inst: Instance) -> Solution:
    _require_single_color(inst, "PkSO")
    class_of = _classes_by_base(inst, PKSO_BASE_SQUARED)
    return _dag_solver(inst, "pkso", class_of, bounds.ONE_PLUS_3_SQRT3)


def power_exponent(r: Fraction, b: Fraction) -> int | None:
    """j >= 0 with r == b**j, else None."""
    j, x = 0, Fraction(1)
    while x < r:
        x *= b
        j += 1
    return j if x == r else None


def solve_pkso_powers_of_b(inst: Instance, b) -> Solution:
    _require_single_color(inst, "PkSO with power-of-b radii")
    b = Fraction(b)
    if b <= 1:
        raise PreconditionError("b must exceed 1")
    norm = normalized_radii(inst)
    for c, r in zip(inst.clients, norm):
        if power_exponent(r, b) is None:
            raise PreconditionError(f"radius of client {c.id} is not a power of "
                                    f"{format_rational(b)} times the smallest radius")
    class_of = [power_exponent(r, b) + 1 for r in norm]
    return _dag_solver(inst, "pkso-powers", class_of, bounds.powers_guarantee(b),
                       {"b": format_rational(b)})


def solve_pkso_two_radii(inst: Instance) -> Solution:
    _require_single_color(inst, "PkSO with two radii")
    radii = _distinct_radii(inst)
    if len(radii) != 2:
        raise PreconditionError(f"expected exactly two distinct radii, found {len(radii)}")
    class_of = [radii.index(r) + 1 for r in inst.radii]
    return _dag_solver(inst, "pkso-2radii", class_of, bounds.THREE)


def solve_pkso_three_radii(inst: Instance) -> Solution:
    _require_single_color(inst, "PkSO with three radii")
    radii = _distinct_radii(inst)
    if len(radii) != 3:
        raise PreconditionError(f"expected exactly three distinct radii, found {len(radii)}")
    r0, r1, r2 = radii
    key, factor = bounds.pick_three_radii_layering(r0, r1, r2)
    # layer class per radius: three layers, top two merged, or bottom two merged
    lift = {"a": (1, 2, 3), "b": (1, 2, 2), "c": (1, 1, 2)}[key]
    class_of = [lift[radii.index(r)] for r in inst.radii]
    details = {"layering": key, "layering_factor": format_rational(factor)}
    sol = _dag_solver(inst, "pkso-3radii", class_of, bounds.THREE_94, details)
    return sol


# -- contact forest solvers -----------------------------------------------------------

def forest_rounding_graph(inst: Instance, st: AlphaState) -> tuple[ContactGraph, list[ClusterFamily]]:
    """Base-4 classes, filter with slack 4^i in class i, distance-rule forest.

    The unit of slack is the smallest scaled radius, so classes do not move
    with alpha.
    """
    r_min = min(inst.radii)
    unit = st.alpha * r_min
    plan = build_layer_plan(normalized_radii(inst), Fraction(FOREST_BASE ** 2), "ascending",
                            clients=st.clients)
    families = [filter_clusters(inst, layer, st.radii, st.cov, Fraction(FOREST_BASE) ** cls * unit)
                for cls, layer in zip(plan.order, plan.layers())]
    g = build_contact_forest(plan, families, inst, st.radii, unit, FOREST_BASE)
    return g, families


def knapsack_patterns(inst: Instance, st: AlphaState) -> list[int]:
    """Maximal client coverage bitmasks over facility sets of weight <= k."""
    masks = []
    for f in range(len(inst.facilities)):
        mk = 0
        for v in st.clients:
            if f in st.reach[v]:
                mk |= 1 << v
        masks.append(mk)
    w = [fac.weight for fac in inst.facilities]
    seen = set()

    def walk(i, left, mask):
        seen.add(mask)
        for j in range(i, len(masks)):
            if w[j] <= left:
                walk(j + 1, left - w[j], mask | masks[j])

    walk(0, inst.k, 0)
    pats = sorted(seen, key=lambda x: (-bin(x).count("1"), x))
    kept: list[int] = []
    for p in pats:
        if not any(p | q == q for q in kept):
            kept.append(p)
    return kept


def configuration_point(inst: Instance, st: AlphaState, patterns: Sequence[int]) -> dict[int, Fraction] | None:
    """A vertex of {sum z_S <= 1, sum |S| z_S >= m} mapped back to cov."""
    p = LpProblem()
    z = [p.add_variable(f"z_{i}", 0, 1) for i in range(len(patterns))]
    p.add_constraint({j: 1 for j in z}, LE, 1, "convexity")
    if inst.m:
        p.add_constraint({j: bin(s).count("1") for j, s in zip(z, patterns)}, GE, inst.m, "coverage")
    p.set_objective({}, "feasibility")
    sol = solve_lp(p)
    if sol.status != OPTIMAL:
        return None
    cov = {v: Fraction(0) for v in st.clients}
    for j, s in zip(z, patterns):
        zj = sol.values[j]
        if zj:
            for v in st.clients:
                if s >> v & 1:
                    cov[v] += zj
    return cov


def solve_pknapso(inst: Instance, backend: str = "explicit", max_iterations: int = DEFAULT_CUT_CAP) -> Solution:
    _require_single_color(inst, "PKnapSO")
    if backend not in ("explicit", "cutting-plane"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "explicit" and len(inst.facilities) > EXPLICIT_MAX_FACILITIES:
        raise PreconditionError(f"explicit backend enumerates facility sets; "
                                f"{len(inst.facilities)} > {EXPLICIT_MAX_FACILITIES} facilities")
    m = inst.m

    def decide_explicit(alpha):
        st = alpha_state(inst, alpha)
        pats = knapsack_patterns(inst, st)
        if max(bin(s).count("1") for s in pats) < m:
            return None
        st.extra["patterns"] = pats
        return st

    def decide_cuts(alpha):
        st = alpha_state(inst, alpha)
        if len(st.clients) < m:
            return None
        cuts: list[dict[int, int]] = []
        for it in range(1, max_iterations + 1):
            p = LpProblem()
            cov = {v: p.add_variable(f"cov_{inst.clients[v].id}", 0, 1) for v in st.clients}
            if m:
                p.add_constraint({j: 1 for j in cov.values()}, GE, m, "coverage")
            for n, lam in enumerate(cuts):
                p.add_constraint({cov[v]: c for v, c in lam.items()}, LE, m - 1, f"cut{n}")
            if not cov:
                p.add_variable("dummy", 0, 0)
            p.set_objective({}, "feasibility")
            sol = solve_lp(p)
            if sol.status != OPTIMAL:
                return None
            st.cov = {v: sol.values[j] for v, j in cov.items()}
            g, families = forest_rounding_graph(inst, st)
            packing = solve_wknappp(g, inst.k)
            if packing.value >= m:
                st.extra.update(graph=g, families=families, packing=packing, iterations=it)
                return st
            cuts.append({v: len(fam.cluster[v]) for fam in families for v in fam.representatives})
        raise Undecided(f"cutting-plane loop hit its cap of {max_iterations} iterations "
                        f"at alpha {format_rational(alpha)}")

    def round_at(alpha, st: AlphaState) -> Solution:
        details = {"backend": backend}
        if backend == "explicit":
            cov = configuration_point(inst, st, st.extra["patterns"])
            if cov is None:
                raise InvariantViolation("configuration LP infeasible although a pattern covers m")
            st.cov = cov
            g, families = forest_rounding_graph(inst, st)
            packing = solve_wknappp(g, inst.k)
            if packing.value < m:
                raise InvariantViolation(f"knapsack packing value {packing.value} < {m} on a "
                                         "configuration point")
        else:
            g, families, packing = st.extra["graph"], st.extra["families"], st.extra["packing"]
            details["iterations"] = st.extra["iterations"]
        opened, trace = [], []
        for path in packing.paths:
            f = cheapest_facility(inst, path[-1], st.radii)
            opened.append(f)
            trace.append(TraceEntry(_path_ids(inst, path), inst.facilities[f].id, "sink-min-weight"))
        sol = _finish(inst, "pknapso", alpha, opened, trace,
                      _claimed(families, packing.covered_nodes()), bounds.SEVENTEEN, None, details)
        if sol.weight_used > inst.k:
            raise InvariantViolation(f"opened weight {sol.weight_used} exceeds budget {inst.k}")
        return sol

    decide = decide_explicit if backend == "explicit" else decide_cuts
    return decision_search(inst, decide, round_at)


def colorful_rounding(inst: Instance, st: AlphaState, g: ContactGraph, max_fractional: int):
    vertex = solve_wckpp(g, inst.requirements, inst.k)
    if vertex is None:
        raise InvariantViolation("colorful packing LP infeasible although the coverage LP is feasible")
    packing = round_wckpp(vertex, g, max_fractional)
    for i, m_i in enumerate(inst.requirements):
        if packing.value_per_color[i] < m_i:
            raise InvariantViolation(f"rounded packing covers {packing.value_per_color[i]} < "
                                     f"{m_i} clients of color {i + 1}")
    return vertex, packing


def solve_pcks(inst: Instance) -> Solution:
    c = inst.colors

    def round_at(alpha, st: AlphaState) -> Solution:
        g, families = forest_rounding_graph(inst, st)
        vertex, packing = colorful_rounding(inst, st, g, 2 * c)
        opened, trace = [], []
        for path in packing.paths:
            f = first_facility(inst, path[-1], st.radii)
            opened.append(f)
            trace.append(TraceEntry(_path_ids(inst, path), inst.facilities[f].id, "leaf"))
        details = {"fractional_leaves": len(vertex.fractional_leaves)}
        return _finish(inst, "pcks", alpha, opened, trace, _claimed(families, packing.covered_nodes()),
                       bounds.SEVENTEEN, inst.k + 2 * c - 1, details)

    return decision_search(inst, lambda a: decide_coverage_lp(inst, a), round_at)


def _uniform_color_radii(inst: Instance) -> list[Fraction]:
    out = []
    for i, members in enumerate(inst.color_classes):
        rs = {inst.clients[v].radius for v in members}
        if len(rs) > 1:
            raise PreconditionError(f"color {i + 1} mixes radii {sorted(map(str, rs))}")
        out.append(rs.pop() if rs else None)
    return out


def _swap_two_colors(inst: Instance) -> Instance:
    from dataclasses import replace
    clients = tuple(replace(c, color=3 - c.color) for c in inst.clients)
    return Instance(clients, inst.facilities, inst.dist, inst.k, inst.requirements[::-1], 2,
                    check_metric=False)


def solve_upcks_two_colors(inst: Instance) -> Solution:
    if inst.colors != 2:
        raise PreconditionError(f"needs exactly two colors (got c={inst.colors})")
    r = _uniform_color_radii(inst)
    if r[0] is not None and r[1] is not None and r[0] > r[1]:
        inst_w, swapped = _swap_two_colors(inst), True
        r = r[::-1]
    else:
        inst_w, swapped = inst, False
    r1 = r[0] if r[0] is not None else r[1]
    r2 = r[1] if r[1] is not None else r[0]
    joint = bounds.golden_below(r1, r2)

    def round_at(alpha, st: AlphaState) -> Solution:
        details = {"branch": "i" if joint else "ii", "colors_swapped": swapped}
        if joint:
            fam = filter_clusters(inst_w, st.clients, st.radii, st.cov)
            families = [fam]
            g = singleton_forest(fam, inst_w, st.radii)
        else:
            c1 = [v for v in st.clients if inst_w.clients[v].color == 1]
            c2 = [v for v in st.clients if inst_w.clients[v].color == 2]
            fam1 = filter_clusters(inst_w, c1, st.radii, st.cov)
            fam2 = filter_clusters(inst_w, c2, st.radii, st.cov, 2 * alpha * r1)
            families = [fam1, fam2]
            plan = LayerPlan({1: tuple(c1), 2: tuple(c2)}, (1, 2), None, 1)
            dag = build_contact_dag(plan, families, inst_w, st.radii)
            forest = ContactGraph(dag.nodes, dag.edges, "forest")
            forest.check_out_forest()
            g = split_depth2_forest(forest)
        vertex, packing = colorful_rounding(inst_w, st, g, 2)
        opened, trace = [], []
        for path in packing.paths:
            if len(path) == 2:
                f, rule = g.edges[(path[0], path[1])], "pair-witness"
            else:
                f, rule = first_facility(inst_w, path[-1], st.radii), "leaf"
            opened.append(f)
            trace.append(TraceEntry(_path_ids(inst_w, path), inst_w.facilities[f].id, rule))
        details["fractional_leaves"] = len(vertex.fractional_leaves)
        return _finish(inst, "upcks2", alpha, opened, trace,
                       _claimed(families, packing.covered_nodes()), bounds.TWO_PLUS_SQRT5,
                       inst.k + 1, details)

    return decision_search(inst_w, lambda a: decide_coverage_lp(inst_w, a), round_at)


ALGORITHMS = {
    "ksupplier-outliers": solve_ksupplier_outliers,
    "pkso": solve_pkso,
    "pkso-powers": solve_pkso_powers_of_b,
    "pkso-2radii": solve_pkso_two_radii,
    "pkso-3radii": solve_pkso_three_radii,
    "pknapso": solve_pknapso,
    "pcks": solve_pcks,
    "upcks2": solve_upcks_two_colors,
}

GUARANTEE_OF = {
    "ksupplier-outliers": "3", "pkso": "1+3sqrt3", "pkso-powers": "powers-of-b",
    "pkso-2radii": "3", "pkso-3radii": "3.94", "pknapso": "17", "pcks": "17", "upcks2": "2+sqrt5",
}
