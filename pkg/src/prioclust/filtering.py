"""Greedy filtering into well-separated clusters, and radius-class layering."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .instance import Instance


@dataclass(frozen=True)
class ClusterFamily:
    representatives: tuple[int, ...]          # client indices, selection order
    cluster: dict[int, tuple[int, ...]]       # representative -> D(v)
    slack: Fraction = Fraction(0)

    def members(self) -> set[int]:
        return {u for d in self.cluster.values() for u in d}


def filter_clusters(inst: Instance, clients: Sequence[int], radii: Sequence[Fraction],
                    cov: Mapping[int, Fraction] | Sequence[Fraction],
                    slack: Fraction = Fraction(0)) -> ClusterFamily:
    """Repeatedly take the highest-coverage remaining client as a representative
    and absorb every remaining u with d(u, v) <= r_u + r_v + slack.

    ``radii`` and ``cov`` are indexed by client index. Ties on coverage go to
    the smallest client id. With ``slack == 0`` this is the plain filter.
    """
    slack = Fraction(slack)
    cc = inst.cc
    order = sorted(clients, key=lambda u: (-cov[u], inst.clients[u].id))
    remaining = set(clients)
    reps, cluster = [], {}
    for v in order:
        if v not in remaining:
            continue
        rv = radii[v]
        row = cc[v]
        d_v = tuple(u for u in order if u in remaining and row[u] <= radii[u] + rv + slack)
        remaining.difference_update(d_v)
        reps.append(v)
        cluster[v] = d_v
    return ClusterFamily(tuple(reps), cluster, slack)


@dataclass(frozen=True)
class LayerPlan:
    classes: dict[int, tuple[int, ...]]   # class index -> client indices
    order: tuple[int, ...]                # layer position -> class index
    base_squared: Fraction | None
    middle: int                           # position of the smallest class

    @property
    def t(self) -> int:
        return len(self.order)

    def layers(self) -> list[tuple[int, ...]]:
        return [self.classes.get(c, ()) for c in self.order]

    def position_of_class(self) -> dict[int, int]:
        return {c: p for p, c in enumerate(self.order)}


def radius_class(r: Fraction, base_squared: Fraction) -> int:
    """Smallest i >= 1 with r < base**i, for r >= 1 (compared on squares)."""
    if r < 1:
        raise ValueError("radii must be normalized so that the minimum is 1")
    r2 = r * r
    i, power = 1, base_squared
    while r2 >= power:
        i += 1
        power *= base_squared
    return i


def alternating_order(t: int) -> tuple[tuple[int, ...], int]:
    """Layer order placing the smallest class in the middle.

    Even classes descend on one side, then class 1, then odd classes ascend:
    t=4 -> (4, 2, 1, 3), t=3 -> (2, 1, 3). The returned middle is the
    position of class 1, so the straddling path edge always joins class 1 to
    class 2 and each side steps two classes at a time.
    """
    evens = list(range(2 * (t // 2), 1, -2))
    odds = list(range(3, t + 1, 2))
    return tuple(evens + [1] + odds), len(evens)


def build_layer_plan(norm_radii: Mapping[int, Fraction] | Sequence[Fraction],
                     base_squared: Fraction, mode: str = "alternating",
                     clients: Sequence[int] | None = None) -> LayerPlan:
    base_squared = Fraction(base_squared)
    if base_squared <= 1:
        raise ValueError("base must exceed 1")
    if clients is None:
        clients = range(len(norm_radii))
    classes: dict[int, list[int]] = {}
    for v in clients:
        classes.setdefault(radius_class(norm_radii[v], base_squared), []).append(v)
    t = max(classes, default=1)
    if mode == "alternating":
        order, middle = alternating_order(t)
    elif mode == "ascending":
        order, middle = tuple(range(1, t + 1)), 0
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return LayerPlan({i: tuple(v) for i, v in classes.items()}, order, base_squared, middle)
