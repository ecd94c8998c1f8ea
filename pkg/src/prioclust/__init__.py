"""Priority k-supplier clustering with outliers, knapsack budgets and colors.

Exact-rational LP rounding algorithms plus an exhaustive oracle for checking
their approximation guarantees on small instances.
"""
from .errors import Infeasible, InstanceError, InvariantViolation, PreconditionError, Undecided
from .evaluate import evaluate_solution
from .instance import Client, Facility, Instance, candidate_alphas, load_instance, make_instance
from .oracle import brute_force_opt, brute_force_path_packing
from .solvers import (ALGORITHMS, Solution, decision_search, solve_ksupplier_outliers, solve_pcks,
                      solve_pknapso, solve_pkso, solve_pkso_powers_of_b, solve_pkso_three_radii,
                      solve_pkso_two_radii, solve_upcks_two_colors)

__all__ = [
    "ALGORITHMS", "Client", "Facility", "Infeasible", "Instance", "InstanceError",
    "InvariantViolation", "PreconditionError", "Solution", "Undecided", "brute_force_opt",
    "brute_force_path_packing", "candidate_alphas", "decision_search", "evaluate_solution",
    "load_instance", "make_instance", "solve_ksupplier_outliers", "solve_pcks", "solve_pknapso",
    "solve_pkso", "solve_pkso_powers_of_b", "solve_pkso_three_radii", "solve_pkso_two_radii",
    "solve_upcks_two_colors",
]
