"""Approximation guarantees as exact numbers of the form a + b*sqrt(s)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Surd:
    """a + b*sqrt(s) with b >= 0 and s >= 0."""
    a: Fraction
    b: Fraction = Fraction(0)
    s: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "s", Fraction(self.s))
        if self.b < 0 or self.s < 0:
            raise ValueError("surd needs b >= 0 and s >= 0")

    @property
    def rational(self) -> bool:
        return self.b == 0 or self.s == 0

    def dominates(self, x: Fraction, scale: Fraction = Fraction(1)) -> bool:
        """Exact test of x <= self * scale for scale >= 0, by squaring."""
        lhs = Fraction(x) - self.a * scale
        if lhs <= 0:
            return True
        return lhs * lhs <= self.b * self.b * self.s * scale * scale

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * float(self.s) ** 0.5


@dataclass(frozen=True)
class Guarantee:
    tag: str
    factor: Surd

    def holds(self, realized: Fraction, alpha: Fraction) -> bool:
        return self.factor.dominates(realized, alpha)


def powers_bound(b: Fraction) -> Fraction:
    """(3b^2 - 1) / (b^2 - 1): factor for radii that are exact powers of b."""
    b2 = Fraction(b) ** 2
    if b2 <= 1:
        raise ValueError("b must exceed 1")
    return (3 * b2 - 1) / (b2 - 1)


def three_radii_bounds(r0: Fraction, r1: Fraction, r2: Fraction) -> dict[str, Fraction]:
    """Factors of the three layerings for radii r0 < r1 < r2.

    "a": three separate layers, "b": r1 and r2 merged, "c": r0 and r1 merged.
    """
    a, b = Fraction(r1) / r0, Fraction(r2) / r1
    return {"a": 3 + 2 / (a * b), "b": 1 + 2 * b, "c": 1 + 2 * a}


def pick_three_radii_layering(r0, r1, r2) -> tuple[str, Fraction]:
    bounds = three_radii_bounds(r0, r1, r2)
    best = min(bounds.values())
    for key in ("a", "b", "c"):            # ties go to the three-layer split
        if bounds[key] == best:
            return key, best
    raise AssertionError("unreachable")


def golden_below(r_small: Fraction, r_large: Fraction) -> bool:
    """r_large <= (1 + sqrt 5)/2 * r_small, decided on squares."""
    lhs = 2 * Fraction(r_large) - r_small
    return lhs <= 0 or lhs * lhs <= 5 * Fraction(r_small) ** 2


THREE = Guarantee("3", Surd(3))
THREE_94 = Guarantee("3.94", Surd(Fraction(197, 50)))
ONE_PLUS_3_SQRT3 = Guarantee("1+3sqrt3", Surd(1, 3, 3))
SEVENTEEN = Guarantee("17", Surd(17))
TWO_PLUS_SQRT5 = Guarantee("2+sqrt5", Surd(2, 1, 5))


def powers_guarantee(b: Fraction) -> Guarantee:
    return Guarantee("powers-of-b", Surd(powers_bound(b)))


GUARANTEES = {g.tag: g for g in (THREE, THREE_94, ONE_PLUS_3_SQRT3, SEVENTEEN, TWO_PLUS_SQRT5)}
