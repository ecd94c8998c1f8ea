"""Exact rational linear programming.

A bounded-variable primal simplex over :class:`~fractions.Fraction` with
Bland's smallest-index rule, run as a two-phase method. Every returned
optimum is a basic feasible solution (a vertex of the feasible region), and
the tight constraints at it are reported so callers can reason about
extreme-point structure.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

LE, EQ, GE = "<=", "=", ">="
_RELATIONS = (LE, EQ, GE)

OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"


@dataclass
class Variable:
    name: str
    lower: Fraction = Fraction(0)
    upper: Fraction | None = None


@dataclass
class Constraint:
    coeffs: dict[int, Fraction]
    relation: str
    rhs: Fraction
    name: str = ""


@dataclass
class LpProblem:
    variables: list[Variable] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    objective: dict[int, Fraction] = field(default_factory=dict)
    sense: str = "max"                # "max", "min" or "feasibility"

    def add_variable(self, name: str, lower=0, upper=None) -> int:
        if lower is None:
            raise ValueError(f"variable {name!r}: a finite lower bound is required")
        self.variables.append(Variable(name, Fraction(lower),
                                       None if upper is None else Fraction(upper)))
        return len(self.variables) - 1

    def add_constraint(self, coeffs: Mapping[int, object], relation: str, rhs,
                       name: str = "") -> int:
        if relation not in _RELATIONS:
            raise ValueError(f"unknown relation {relation!r}")
        row = {}
        for j, a in coeffs.items():
            if not 0 <= j < len(self.variables):
                raise ValueError(f"constraint {name!r} references undeclared variable {j}")
            a = Fraction(a)
            if a:
                row[j] = row.get(j, 0) + a
        self.constraints.append(Constraint(row, relation, Fraction(rhs), name))
        return len(self.constraints) - 1

    def set_objective(self, coeffs: Mapping[int, object], sense: str = "max") -> None:
        if sense not in ("max", "min", "feasibility"):
            raise ValueError(f"unknown sense {sense!r}")
        self.objective = {j: Fraction(a) for j, a in coeffs.items() if a}
        self.sense = sense

    def index(self, name: str) -> int:
        for j, v in enumerate(self.variables):
            if v.name == name:
                return j
        raise KeyError(name)

    def to_text(self) -> str:
        """Human-readable LP-format dump (debugging only)."""
        def term(j, a):
            return f"{'+' if a >= 0 else '-'} {abs(a)} {self.variables[j].name}"

        lines = [{"max": "Maximize", "min": "Minimize", "feasibility": "Find"}[self.sense]]
        lines.append("  obj: " + (" ".join(term(j, a) for j, a in sorted(self.objective.items())) or "0"))
        lines.append("Subject To")
        for i, c in enumerate(self.constraints):
            body = " ".join(term(j, a) for j, a in sorted(c.coeffs.items())) or "0"
            lines.append(f"  {c.name or f'r{i}'}: {body} {c.relation} {c.rhs}")
        lines.append("Bounds")
        for v in self.variables:
            hi = "inf" if v.upper is None else str(v.upper)
            lines.append(f"  {v.lower} <= {v.name} <= {hi}")
        lines.append("End")
        return "\n".join(lines)


@dataclass
class VertexSolution:
    status: str
    values: tuple[Fraction, ...] = ()
    objective_value: Fraction | None = None
    # entries are ("row", i), ("lower", j) or ("upper", j)
    tight_set: tuple[tuple[str, int], ...] = ()
    names: tuple[str, ...] = ()
    pivots: int = 0

    @property
    def assignment(self) -> dict[str, Fraction]:
        return dict(zip(self.names, self.values))

    def __getitem__(self, name: str) -> Fraction:
        return self.values[self.names.index(name)]


class _Tableau:
    """Dense bounded-variable simplex tableau.

    ``rows[i]`` holds B^-1 A for basic row i, ``beta[i]`` the current value of
    the basic variable, ``dj`` the reduced costs of the active objective.
    Nonbasic variables sit at 0 or at their upper bound (``at_upper``).
    """

    def __init__(self, rows, rhs, upper, basis, n_cols):
        self.rows = rows
        self.beta = rhs
        self.upper = upper
        self.basis = basis
        self.n = n_cols
        self.at_upper = [False] * n_cols
        self.blocked = [False] * n_cols
        self.dj = [Fraction(0)] * n_cols
        self.pivots = 0

    def value(self, j):
        pos = self._pos.get(j)
        if pos is not None:
            return self.beta[pos]
        return self.upper[j] if self.at_upper[j] else Fraction(0)

    def reindex(self):
        self._pos = {b: i for i, b in enumerate(self.basis)}

    def set_objective(self, cost):
        self.cost = cost
        dj = list(cost)
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[i]
                for j in range(self.n):
                    a = row[j]
                    if a:
                        dj[j] -= cb * a
        self.dj = dj

    def pivot(self, r, q):
        row = self.rows[r]
        p = row[q]
        if p != 1:
            inv = 1 / p
            for j in range(self.n):
                if row[j]:
                    row[j] *= inv
        nz = [j for j in range(self.n) if row[j]]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[q]
            if f:
                for j in nz:
                    other[j] -= f * row[j]
        f = self.dj[q]
        if f:
            for j in nz:
                self.dj[j] -= f * row[j]
        self.basis[r] = q
        self.pivots += 1

    def run(self):
        """Iterate to optimality. Returns OPTIMAL or UNBOUNDED."""
        self.reindex()
        while True:
            q = -1
            for j in range(self.n):
                if self.blocked[j] or j in self._pos:
                    continue
                d = self.dj[j]
                if (d > 0 and not self.at_upper[j]) or (d < 0 and self.at_upper[j]):
                    q = j
                    break
            if q < 0:
                return OPTIMAL
            delta = -1 if self.at_upper[q] else 1
            # step length: the entering bound flip competes with basic rows
            theta = self.upper[q]
            leave_row, leave_to_upper = -1, False
            best_key = q if theta is not None else None
            for i, row in enumerate(self.rows):
                a = row[q]
                if not a:
                    continue
                g = a if delta > 0 else -a
                b = self.basis[i]
                if g > 0:
                    limit = self.beta[i] / g
                    to_upper = False
                else:
                    ub = self.upper[b]
                    if ub is None:
                        continue
                    limit = (ub - self.beta[i]) / -g
                    to_upper = True
                if theta is None or limit < theta or (limit == theta and b < best_key):
                    theta, leave_row, leave_to_upper, best_key = limit, i, to_upper, b
            if theta is None:
                return UNBOUNDED
            if theta:
                for i, row in enumerate(self.rows):
                    a = row[q]
                    if a:
                        self.beta[i] -= delta * theta * a
            if leave_row < 0:
                self.at_upper[q] = not self.at_upper[q]
                continue
            entering_value = (self.upper[q] if self.at_upper[q] else Fraction(0)) + delta * theta
            leaving = self.basis[leave_row]
            self.at_upper[leaving] = leave_to_upper
            self.at_upper[q] = False
            self.beta[leave_row] = entering_value
            self.pivot(leave_row, q)
            del self._pos[leaving]
            self._pos[q] = leave_row


def solve_lp(p: LpProblem) -> VertexSolution:
    """Solve ``p`` exactly and return a vertex solution or a status."""
    n = len(p.variables)
    if n == 0:
        raise ValueError("LP needs at least one variable")
    names = tuple(v.name for v in p.variables)
    lower = [v.lower for v in p.variables]
    upper = [None if v.upper is None else v.upper - v.lower for v in p.variables]
    if any(u is not None and u < 0 for u in upper):
        return VertexSolution(INFEASIBLE, names=names)

    # standard form over shifted variables x' = x - lower
    m = len(p.constraints)
    n_slack = sum(1 for c in p.constraints if c.relation != EQ)
    rows_data = []
    slack_col = n
    art_needed = []
    for c in p.constraints:
        rhs = c.rhs - sum(a * lower[j] for j, a in c.coeffs.items())
        coeffs = dict(c.coeffs)
        sc = None
        if c.relation == LE:
            coeffs[slack_col] = Fraction(1)
            sc = slack_col
            slack_col += 1
        elif c.relation == GE:
            coeffs[slack_col] = Fraction(-1)
            sc = slack_col
            slack_col += 1
        if rhs < 0:
            coeffs = {j: -a for j, a in coeffs.items()}
            rhs = -rhs
        rows_data.append((coeffs, rhs))
        art_needed.append(sc is None or coeffs[sc] < 0)
    n_art = sum(art_needed)
    n_cols = n + n_slack + n_art
    col_upper = upper + [None] * (n_slack + n_art)
    rows, rhs_list, basis = [], [], []
    art_col = n + n_slack
    art_cols = []
    slack_iter = iter(range(n, n + n_slack))
    for (coeffs, rhs), c, need in zip(rows_data, p.constraints, art_needed):
        row = [Fraction(0)] * n_cols
        for j, a in coeffs.items():
            row[j] = a
        sc = next(slack_iter) if c.relation != EQ else None
        if need:
            row[art_col] = Fraction(1)
            basis.append(art_col)
            art_cols.append(art_col)
            art_col += 1
        else:
            basis.append(sc)
        rows.append(row)
        rhs_list.append(rhs)
    tab = _Tableau(rows, rhs_list, col_upper, basis, n_cols)

    if art_cols:
        cost = [Fraction(0)] * n_cols
        for j in art_cols:
            cost[j] = Fraction(-1)
        tab.set_objective(cost)
        tab.run()
        tab.reindex()
        if sum(tab.value(j) for j in art_cols) > 0:
            return VertexSolution(INFEASIBLE, names=names, pivots=tab.pivots)
        art = set(art_cols)
        # drive zero-valued artificials out of the basis; drop redundant rows
        r = 0
        while r < len(tab.rows):
            if tab.basis[r] in art:
                row = tab.rows[r]
                q = next((j for j in range(n + n_slack) if row[j] and j not in tab._pos), -1)
                if q >= 0:
                    value = tab.value(q)
                    leaving = tab.basis[r]
                    tab.beta[r] = value
                    tab.pivot(r, q)
                    tab.reindex()
                    tab.at_upper[leaving] = False
                else:
                    del tab.rows[r], tab.beta[r], tab.basis[r]
                    tab.reindex()
                    continue
            r += 1
        for j in art_cols:
            tab.blocked[j] = True

    if p.sense == "feasibility" or not p.objective:
        cost = [Fraction(0)] * n_cols
    else:
        sign = 1 if p.sense == "max" else -1
        cost = [Fraction(0)] * n_cols
        for j, a in p.objective.items():
            cost[j] = sign * a
    tab.set_objective(cost)
    status = tab.run()
    tab.reindex()
    if status == UNBOUNDED:
        return VertexSolution(UNBOUNDED, names=names, pivots=tab.pivots)

    x = tuple(lower[j] + tab.value(j) for j in range(n))
    obj = sum((a * x[j] for j, a in p.objective.items()), Fraction(0))
    return VertexSolution(OPTIMAL, x, obj, tight_constraints(p, x), names, tab.pivots)


def tight_constraints(p: LpProblem, x: Sequence[Fraction]) -> tuple[tuple[str, int], ...]:
    tight = []
    for i, c in enumerate(p.constraints):
        if sum(a * x[j] for j, a in c.coeffs.items()) == c.rhs:
            tight.append(("row", i))
    for j, v in enumerate(p.variables):
        if x[j] == v.lower:
            tight.append(("lower", j))
        if v.upper is not None and x[j] == v.upper:
            tight.append(("upper", j))
    return tuple(tight)


def check_feasible(p: LpProblem, x: Sequence[Fraction]) -> bool:
    """Exact substitution check of every row and bound."""
    for c in p.constraints:
        lhs = sum(a * x[j] for j, a in c.coeffs.items())
        if c.relation == LE and lhs > c.rhs:
            return False
        if c.relation == GE and lhs < c.rhs:
            return False
        if c.relation == EQ and lhs != c.rhs:
            return False
    for j, v in enumerate(p.variables):
        if x[j] < v.lower or (v.upper is not None and x[j] > v.upper):
            return False
    return True


def matrix_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank over the rationals by Gaussian elimination."""
    mat = [list(map(Fraction, r)) for r in rows]
    if not mat:
        return 0
    n_cols = len(mat[0])
    rank = 0
    for col in range(n_cols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col] / prow[col]
                mat[i] = [a - f * b for a, b in zip(mat[i], prow)]
        rank += 1
        if rank == len(mat):
            break
    return rank


def tight_rows(p: LpProblem, tight: Sequence[tuple[str, int]]) -> list[list[Fraction]]:
    n = len(p.variables)
    out = []
    for kind, idx in tight:
        row = [Fraction(0)] * n
        if kind == "row":
            for j, a in p.constraints[idx].coeffs.items():
                row[j] = a
        else:
            row[idx] = Fraction(1)
        out.append(row)
    return out


def rank_of_tight_set(p: LpProblem, s: VertexSolution) -> int:
    if s.status != OPTIMAL:
        raise ValueError("rank is only defined for an optimal vertex")
    return matrix_rank(tight_rows(p, s.tight_set))
