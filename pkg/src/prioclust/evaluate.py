"""Recompute a solution's reported figures from the raw distance matrix."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import InstanceError
from .instance import Instance


@dataclass(frozen=True)
class Evaluation:
    realized_ratio: Fraction | None     # None when some requirement is unmet
    covered_per_color: tuple[int, ...]
    centers_used: int
    weight_used: int


def evaluate_opened(inst: Instance, opened_ids: Iterable[str]) -> Evaluation:
    """Objective of an opened set: the largest over colors of the m_i-th
    smallest d(v, S) / r_v, with coverage counted at that threshold."""
    by_id = {f.id: j for j, f in enumerate(inst.facilities)}
    ids = sorted(set(opened_ids))
    unknown = [x for x in ids if x not in by_id]
    if unknown:
        raise InstanceError(f"unknown facility ids {unknown}")
    cols = [len(inst.clients) + by_id[x] for x in ids]
    weight = sum(inst.facilities[by_id[x]].weight for x in ids)
    best: list[Fraction | None] = []
    for i, c in enumerate(inst.clients):
        row = inst.dist[i]
        best.append(min(row[p] for p in cols) / c.radius if cols else None)
    threshold = Fraction(0)
    for color in range(1, inst.colors + 1):
        need = inst.requirements[color - 1]
        if need == 0:
            continue
        ratios = sorted(b for b, c in zip(best, inst.clients) if c.color == color and b is not None)
        if len(ratios) < need:
            return Evaluation(None, _count(inst, best, None), len(ids), weight)
        threshold = max(threshold, ratios[need - 1])
    return Evaluation(threshold, _count(inst, best, threshold), len(ids), weight)


def _count(inst: Instance, best, threshold) -> tuple[int, ...]:
    out = [0] * inst.colors
    if threshold is None:
        return tuple(out)
    for b, c in zip(best, inst.clients):
        if b is not None and b <= threshold:
            out[c.color - 1] += 1
    return tuple(out)


def evaluate_solution(inst: Instance, sol) -> Evaluation:
    return evaluate_opened(inst, sol.opened)


def agrees(inst: Instance, sol) -> bool:
    ev = evaluate_solution(inst, sol)
    return (ev.realized_ratio == sol.realized_ratio
            and ev.covered_per_color == tuple(sol.covered_per_color)
            and ev.centers_used == sol.centers_used and ev.weight_used == sol.weight_used)
