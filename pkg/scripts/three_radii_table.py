"""Tabulate the three-radii layering factors over a grid of radius ratios.

For radii 1 < a < a*b the solver picks the smallest of three layerings; this
script prints the chosen factor per (a, b) and the worst one found.
    python3 scripts/three_radii_table.py --steps 40
"""
import argparse
from fractions import Fraction

from prioclust.bounds import pick_three_radii_layering


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lo", type=Fraction, default=Fraction(11, 10))
    ap.add_argument("--hi", type=Fraction, default=Fraction(3))
    ap.add_argument("--steps", type=int, default=20)
    ap.add_argument("--diagonal", action="store_true", help="only a == b")
    args = ap.parse_args()
    grid = [args.lo + (args.hi - args.lo) * i / args.steps for i in range(args.steps + 1)]
    worst = (Fraction(0), None)
    for a in grid:
        row = []
        for b in ([a] if args.diagonal else grid):
            key, factor = pick_three_radii_layering(1, a, a * b)
            row.append(f"{key}:{float(factor):.3f}")
            worst = max(worst, (factor, (a, b)), key=lambda t: t[0])
        print(f"a={float(a):.3f} " + " ".join(row))
    factor, (a, b) = worst
    print(f"worst factor {float(factor):.4f} at a={float(a):.4f} b={float(b):.4f}")


if __name__ == "__main__":
    main()
