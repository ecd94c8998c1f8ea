"""Instance model, exact-rational conventions and JSON (de)serialization.

Points are indexed clients first, then facilities. All numeric data is held
as :class:`fractions.Fraction`; nothing in the core touches floats.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import InstanceError

Rational = Fraction


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, a bare integer, or an integer-valued string exactly.

    Floats are rejected on purpose.
    """
    if isinstance(value, bool):
        raise InstanceError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                p, q = text.split("/")
                return Fraction(int(p), int(q))
            return Fraction(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise InstanceError(f"not a rational: {value!r}") from exc
    raise InstanceError(f"not a rational: {value!r}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Client:
    id: str
    color: int
    radius: Fraction


@dataclass(frozen=True)
class Facility:
    id: str
    weight: int = 1


@dataclass(frozen=True)
class Instance:
    clients: tuple[Client, ...]
    facilities: tuple[Facility, ...]
    dist: tuple[tuple[Fraction, ...], ...]
    k: int
    requirements: tuple[int, ...]
    colors: int = 1
    check_metric: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        _validate(self)

    # -- sizes and index helpers -------------------------------------------
    @property
    def n_clients(self) -> int:
        return len(self.clients)

    @property
    def n_facilities(self) -> int:
        return len(self.facilities)

    def point_id(self, p: int) -> str:
        nc = len(self.clients)
        return self.clients[p].id if p < nc else self.facilities[p - nc].id

    @cached_property
    def cf(self) -> tuple[tuple[Fraction, ...], ...]:
        """Client-by-facility distance block."""
        nc = len(self.clients)
        return tuple(row[nc:] for row in self.dist[:nc])

    @cached_property
    def cc(self) -> tuple[tuple[Fraction, ...], ...]:
        nc = len(self.clients)
        return tuple(row[:nc] for row in self.dist[:nc])

    @cached_property
    def radii(self) -> tuple[Fraction, ...]:
        return tuple(c.radius for c in self.clients)

    @cached_property
    def client_index(self) -> dict[str, int]:
        return {c.id: i for i, c in enumerate(self.clients)}

    @cached_property
    def facility_index(self) -> dict[str, int]:
        return {f.id: i for i, f in enumerate(self.facilities)}

    @cached_property
    def color_classes(self) -> tuple[tuple[int, ...], ...]:
        """Client indices per color, colors 1..c stored at positions 0..c-1."""
        groups = [[] for _ in range(self.colors)]
        for i, c in enumerate(self.clients):
            groups[c.color - 1].append(i)
        return tuple(tuple(g) for g in groups)

    @property
    def m(self) -> int:
        """Single-color requirement (the PkSO ``m``)."""
        if self.colors != 1:
            raise ValueError("m is only defined for single-color instances")
        return self.requirements[0]


def _validate(inst: Instance) -> None:
    nc, nf = len(inst.clients), len(inst.facilities)
    n = nc + nf
    if inst.colors < 1:
        raise InstanceError("colors must be >= 1")
    if not isinstance(inst.k, int) or inst.k < 0:
        raise InstanceError(f"k must be a nonnegative integer, got {inst.k!r}")
    if len(inst.requirements) != inst.colors:
        raise InstanceError(
            f"expected {inst.colors} requirements, got {len(inst.requirements)}")
    ids = [c.id for c in inst.clients] + [f.id for f in inst.facilities]
    if len(set(ids)) != len(ids):
        seen, dup = set(), None
        for x in ids:
            if x in seen:
                dup = x
                break
            seen.add(x)
        raise InstanceError(f"duplicate id {dup!r}")
    for x in ids:
        if not x or "|" in x:
            raise InstanceError(f"invalid id {x!r}")
    sizes = [0] * inst.colors
    for c in inst.clients:
        if not 1 <= c.color <= inst.colors:
            raise InstanceError(f"client {c.id!r}: color {c.color} outside 1..{inst.colors}")
        if c.radius <= 0:
            raise InstanceError(f"client {c.id!r}: radius must be > 0")
        sizes[c.color - 1] += 1
    for f in inst.facilities:
        if not isinstance(f.weight, int) or f.weight < 0:
            raise InstanceError(f"facility {f.id!r}: weight must be a nonnegative integer")
    for i, (m_i, size) in enumerate(zip(inst.requirements, sizes)):
        if not 0 <= m_i <= size:
            raise InstanceError(f"requirement m_{i + 1}={m_i} outside 0..{size}")
    if len(inst.dist) != n or any(len(row) != n for row in inst.dist):
        raise InstanceError(f"distance matrix must be {n}x{n}")
    for a in range(n):
        if inst.dist[a][a] != 0:
            raise InstanceError(f"nonzero diagonal at {ids[a]!r}")
        for b in range(a + 1, n):
            if inst.dist[a][b] != inst.dist[b][a]:
                raise InstanceError(f"asymmetric distance ({ids[a]}, {ids[b]})")
            if inst.dist[a][b] < 0:
                raise InstanceError(f"negative distance ({ids[a]}, {ids[b]})")
    if inst.check_metric:
        bad = triangle_violation(inst.dist)
        if bad is not None:
            u, v, w = (ids[p] for p in bad)
            raise InstanceError(
                f"triangle inequality violated ({u}, {v}, {w}): d({u},{w}) > d({u},{v}) + d({v},{w})")


def triangle_violation(dist: Sequence[Sequence[Fraction]]):
    """Return (a, b, c) with d(a,c) > d(a,b) + d(b,c), or None.

    Works on a common-denominator integer copy so the check is exact and
    vectorized.
    """
    n = len(dist)
    if n < 3:
        return None
    den = 1
    for row in dist:
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [[x.numerator * (den // x.denominator) for x in row] for row in dist]
    biggest = max(max(row) for row in ints)
    dtype = np.int64 if biggest < (1 << 60) else object
    D = np.array(ints, dtype=dtype)
    for b in range(n):
        via = D[:, b][:, None] + D[b, :][None, :]
        bad = np.argwhere(D > via)
        if len(bad):
            a, c = bad[0]
            return int(a), b, int(c)
    return None


# -- construction helpers ---------------------------------------------------

def make_instance(clients: Iterable[Client], facilities: Iterable[Facility],
                  distance, k: int, requirements: Sequence[int],
                  colors: int | None = None) -> Instance:
    """Build an Instance from a distance callable ``distance(id_a, id_b)``."""
    clients = tuple(clients)
    facilities = tuple(facilities)
    ids = [c.id for c in clients] + [f.id for f in facilities]
    n = len(ids)
    rows = []
    for a in range(n):
        rows.append(tuple(Fraction(0) if a == b else Fraction(distance(ids[a], ids[b]))
                          for b in range(n)))
    if colors is None:
        colors = len(requirements)
    return Instance(clients, facilities, tuple(rows), k, tuple(requirements), colors)


def pair_key(a: str, b: str) -> str:
    lo, hi = sorted((a, b))
    return f"{lo}|{hi}"


def load_instance(document) -> Instance:
    """Parse a JSON instance document (bytes, str, or file-like)."""
    if hasattr(document, "read"):
        document = document.read()
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed JSON: {exc}") from exc
    return instance_from_dict(data)


def instance_from_dict(data: dict) -> Instance:
    try:
        colors = int(data.get("colors", 1))
        k = data["k"]
        requirements = tuple(data["requirements"])
        raw_clients = data["clients"]
        raw_facilities = data["facilities"]
        raw_dist = data["distances"]
    except (KeyError, TypeError) as exc:
        raise InstanceError(f"missing or mistyped field: {exc}") from exc
    if not isinstance(k, int) or any(not isinstance(m, int) for m in requirements):
        raise InstanceError("k and requirements must be integers")
    clients = []
    for c in raw_clients:
        try:
            clients.append(Client(str(c["id"]), int(c.get("color", 1)), parse_rational(c["radius"])))
        except KeyError as exc:
            raise InstanceError(f"client entry missing {exc}") from exc
    facilities = []
    for f in raw_facilities:
        try:
            w = f.get("weight", 1)
            if not isinstance(w, int) or isinstance(w, bool):
                raise InstanceError(f"facility {f.get('id')!r}: weight must be an integer")
            facilities.append(Facility(str(f["id"]), w))
        except KeyError as exc:
            raise InstanceError(f"facility entry missing {exc}") from exc
    ids = [c.id for c in clients] + [f.id for f in facilities]
    pos = {x: i for i, x in enumerate(ids)}
    n = len(ids)
    table: dict[tuple[int, int], Fraction] = {}
    for key, raw in raw_dist.items():
        parts = key.split("|")
        if len(parts) != 2 or parts[0] not in pos or parts[1] not in pos:
            raise InstanceError(f"bad distance key {key!r}")
        a, b = pos[parts[0]], pos[parts[1]]
        value = parse_rational(raw)
        if a == b:
            if value != 0:
                raise InstanceError(f"nonzero diagonal at {parts[0]!r}")
            continue
        if (a, b) in table and table[(a, b)] != value:
            raise InstanceError(f"asymmetric distance ({parts[0]}, {parts[1]})")
        table[(a, b)] = value
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            if a == b:
                row.append(Fraction(0))
                continue
            v1, v2 = table.get((a, b)), table.get((b, a))
            if v1 is None and v2 is None:
                raise InstanceError(f"missing distance ({ids[a]}, {ids[b]})")
            if v1 is not None and v2 is not None and v1 != v2:
                raise InstanceError(f"asymmetric distance ({ids[a]}, {ids[b]})")
            row.append(v1 if v1 is not None else v2)
        rows.append(tuple(row))
    return Instance(tuple(clients), tuple(facilities), tuple(rows), k, requirements, colors)


def instance_to_dict(inst: Instance) -> dict:
    ids = [c.id for c in inst.clients] + [f.id for f in inst.facilities]
    distances = {}
    n = len(ids)
    for a in range(n):
        for b in range(a + 1, n):
            distances[pair_key(ids[a], ids[b])] = format_rational(inst.dist[a][b])
    return {
        "colors": inst.colors,
        "k": inst.k,
        "requirements": list(inst.requirements),
        "clients": [{"id": c.id, "color": c.color, "radius": format_rational(c.radius)}
                    for c in inst.clients],
        "facilities": [{"id": f.id, "weight": f.weight} for f in inst.facilities],
        "distances": dict(sorted(distances.items())),
    }


def dump_instance(inst: Instance) -> str:
    """Canonical JSON text (sorted keys, fixed indentation)."""
    return json.dumps(instance_to_dict(inst), indent=1, sort_keys=True) + "\n"


def instance_digest(inst: Instance) -> str:
    canonical = json.dumps(instance_to_dict(inst), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


# -- decision-version machinery --------------------------------------------

@dataclass(frozen=True)
class AlphaScale:
    alpha: Fraction

    def __post_init__(self):
        if Fraction(self.alpha) <= 0:
            raise ValueError("alpha must be > 0")


def scale_radii(inst: Instance, s: AlphaScale | Fraction | int) -> Instance:
    alpha = Fraction(s.alpha if isinstance(s, AlphaScale) else s)
    if alpha <= 0:
        raise ValueError("alpha must be > 0")
    clients = tuple(replace(c, radius=c.radius * alpha) for c in inst.clients)
    # the metric is untouched, so skip the cubic re-check
    return Instance(clients, inst.facilities, inst.dist, inst.k, inst.requirements,
                    inst.colors, check_metric=False)


def candidate_alphas(inst: Instance) -> list[Fraction]:
    """Sorted distinct ratios d(v, f) / r_v over all client-facility pairs."""
    ratios = {d / c.radius for c, row in zip(inst.clients, inst.cf) for d in row}
    return sorted(ratios)


def coverable(inst: Instance) -> bool:
    return all(any(d <= c.radius for d in row) for c, row in zip(inst.clients, inst.cf))


def normalized_radii(inst: Instance) -> tuple[Fraction, ...]:
    """Radii divided by the minimum radius, so the smallest equals 1."""
    if not inst.clients:
        return ()
    r_min = min(inst.radii)
    return tuple(r / r_min for r in inst.radii)
