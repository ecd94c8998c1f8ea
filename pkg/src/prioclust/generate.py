"""Seeded random instances on integer line/grid points with the L1 metric."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InstanceError
from .instance import Client, Facility, Instance


@dataclass
class GeneratorConfig:
    n_clients: int = 10
    n_facilities: int = 4
    colors: int = 1
    k: int = 2
    layout: str = "line"               # "line" or "grid"
    coord_range: int = 50
    radius_set: Sequence[Fraction] = (Fraction(1),)
    # per-color requirement as a fraction of the color class size; None draws
    # uniformly from 0..|C_i|
    requirement_fraction: Sequence[Fraction] | Fraction | None = Fraction(1, 2)
    # facility weights drawn uniformly from this inclusive range
    weight_range: tuple[int, int] = (1, 1)
    # when set, every client of color i gets radius_set[i-1]
    radius_by_color: bool = False


def _ids(prefix: str, n: int) -> list[str]:
    width = max(2, len(str(max(n - 1, 0))))
    return [f"{prefix}{i:0{width}d}" for i in range(n)]


def generate_random(cfg: GeneratorConfig, seed: int) -> Instance:
    if cfg.n_clients <= 0:
        raise InstanceError("need at least one client")
    if cfg.n_facilities < 0 or cfg.colors < 1 or cfg.k < 0:
        raise InstanceError("invalid facility count, color count, or k")
    if not cfg.radius_set:
        raise InstanceError("radius_set must be non-empty")
    if cfg.radius_by_color and len(cfg.radius_set) < cfg.colors:
        raise InstanceError("radius_by_color needs one radius per color")
    if cfg.layout not in ("line", "grid"):
        raise InstanceError(f"unknown layout {cfg.layout!r}")
    lo_w, hi_w = cfg.weight_range
    if lo_w < 0 or hi_w < lo_w:
        raise InstanceError("invalid weight range")
    rng = random.Random(seed)
    radii = [Fraction(r) for r in cfg.radius_set]

    def point():
        if cfg.layout == "line":
            return (rng.randint(0, cfg.coord_range),)
        return (rng.randint(0, cfg.coord_range), rng.randint(0, cfg.coord_range))

    colors = [rng.randint(1, cfg.colors) for _ in range(cfg.n_clients)]
    clients = []
    coords = []
    for cid, color in zip(_ids("c", cfg.n_clients), colors):
        r = radii[color - 1] if cfg.radius_by_color else rng.choice(radii)
        clients.append(Client(cid, color, r))
        coords.append(point())
    facilities = []
    for fid in _ids("f", cfg.n_facilities):
        facilities.append(Facility(fid, rng.randint(lo_w, hi_w)))
        coords.append(point())

    sizes = [colors.count(i + 1) for i in range(cfg.colors)]
    frac = cfg.requirement_fraction
    requirements = []
    for i, size in enumerate(sizes):
        if frac is None:
            requirements.append(rng.randint(0, size))
            continue
        f_i = Fraction(frac[i] if isinstance(frac, (list, tuple)) else frac)
        requirements.append(min(size, int(f_i * size)))

    n = len(coords)
    dist = tuple(
        tuple(Fraction(sum(abs(x - y) for x, y in zip(coords[a], coords[b]))) for b in range(n))
        for a in range(n))
    # L1 distances on integer points are a metric by construction
    return Instance(tuple(clients), tuple(facilities), dist, cfg.k, tuple(requirements),
                    cfg.colors, check_metric=False)


def line_instance(client_coords: Sequence, facility_coords: Sequence,
                  radii: Sequence, k: int, requirements: Sequence[int],
                  colors: Sequence[int] | None = None,
                  weights: Sequence[int] | None = None) -> Instance:
    """Explicit line-metric instance, handy for hand-built examples and tests."""
    nc = len(client_coords)
    colors = list(colors) if colors is not None else [1] * nc
    weights = list(weights) if weights is not None else [1] * len(facility_coords)
    clients = tuple(Client(cid, col, Fraction(r))
                    for cid, col, r in zip(_ids("c", nc), colors, radii))
    facilities = tuple(Facility(fid, w) for fid, w in zip(_ids("f", len(facility_coords)), weights))
    pts = [Fraction(x) for x in client_coords] + [Fraction(x) for x in facility_coords]
    dist = tuple(tuple(abs(a - b) for b in pts) for a in pts)
    return Instance(clients, facilities, dist, k, tuple(requirements), len(requirements))
