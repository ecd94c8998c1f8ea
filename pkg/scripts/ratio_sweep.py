"""Run every solver against the exhaustive oracle on random instances.

Prints one row per solver: runs, bound failures, worst realized/oracle ratio.
    python3 scripts/ratio_sweep.py --seeds 50
"""
import argparse
import time
from fractions import Fraction

from prioclust import bounds
from prioclust.errors import Infeasible
from prioclust.generate import GeneratorConfig, generate_random
from prioclust.oracle import brute_force_opt
from prioclust.solvers import (solve_ksupplier_outliers, solve_pcks, solve_pknapso, solve_pkso,
                               solve_pkso_powers_of_b, solve_pkso_three_radii,
                               solve_pkso_two_radii, solve_upcks_two_colors)

F = Fraction
BASE = dict(n_clients=16, n_facilities=6, k=3, layout="grid", coord_range=60,
            requirement_fraction=F(2, 3))

SETUPS = [
    # name, solver, guarantee, constraint, generator overrides
    ("ksupplier-outliers", solve_ksupplier_outliers, bounds.THREE, "cardinality",
     dict(radius_set=(F(2),))),
    ("pkso", solve_pkso, bounds.ONE_PLUS_3_SQRT3, "cardinality",
     dict(radius_set=(F(1), F(7), F(60), F(300)))),
    ("pkso-powers b=2", lambda i: solve_pkso_powers_of_b(i, 2), bounds.powers_guarantee(2),
     "cardinality", dict(radius_set=tuple(F(2) ** j for j in range(6)))),
    ("pkso-2radii", solve_pkso_two_radii, bounds.THREE, "cardinality",
     dict(radius_set=(F(1), F(9, 2)))),
    ("pkso-3radii", solve_pkso_three_radii, bounds.THREE_94, "cardinality",
     dict(radius_set=(F(1), F(3, 2), F(9, 4)))),
    ("pknapso explicit", solve_pknapso, bounds.SEVENTEEN, "knapsack",
     dict(radius_set=(F(1), F(3), F(10)), weight_range=(1, 3))),
    ("pknapso cutting-plane", lambda i: solve_pknapso(i, "cutting-plane"), bounds.SEVENTEEN,
     "knapsack", dict(radius_set=(F(1), F(3), F(10)), weight_range=(1, 3))),
    ("pcks c=3", solve_pcks, bounds.SEVENTEEN, "cardinality",
     dict(radius_set=(F(1), F(4), F(20)), colors=3)),
    ("upcks2", solve_upcks_two_colors, bounds.TWO_PLUS_SQRT5, "cardinality",
     dict(radius_set=(F(1), F(3)), colors=2, radius_by_color=True)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=30)
    ap.add_argument("--only", help="substring filter on solver names")
    args = ap.parse_args()
    print(f"{'solver':24} {'runs':>5} {'fail':>5} {'worst':>8} {'mean':>8} {'secs':>6}")
    for name, solve, guarantee, constraint, overrides in SETUPS:
        if args.only and args.only not in name:
            continue
        start = time.perf_counter()
        ratios, fails, runs = [], 0, 0
        for seed in range(args.seeds):
            inst = generate_random(GeneratorConfig(**{**BASE, **overrides}), seed)
            try:
                sol = solve(inst)
            except Infeasible:
                continue
            opt = brute_force_opt(inst, constraint).optimal_alpha
            runs += 1
            fails += not guarantee.holds(sol.realized_ratio, opt)
            if opt:
                ratios.append(sol.realized_ratio / opt)
        worst = float(max(ratios)) if ratios else 0.0
        mean = float(sum(ratios) / len(ratios)) if ratios else 0.0
        print(f"{name:24} {runs:>5} {fails:>5} {worst:>8.3f} {mean:>8.3f} "
              f"{time.perf_counter() - start:>6.1f}")


if __name__ == "__main__":
    main()
