"""Acceptance criteria, each run at its stated size, tolerance and time limit.

Every criterion prints one PASS/FAIL line (also repeated in the pytest
terminal summary). Bounds are compared exactly: irrational factors go through
the squared test in ``prioclust.bounds``.
"""
import random
from contextlib import contextmanager
from fractions import Fraction
from time import perf_counter

import pytest

import conftest
from oracles import basic_solutions, best_basic_objective, check_filter_invariants, random_dag, \
    random_forest, random_lp
from prioclust import bounds
from prioclust.cli import main as cli_main
from prioclust.errors import Infeasible
from prioclust.generate import GeneratorConfig, generate_random
from prioclust.lp import OPTIMAL, check_feasible, rank_of_tight_set, solve_lp
from prioclust.oracle import brute_force_opt, brute_force_path_packing
from prioclust.pathpack import build_wckpp_lp, solve_wckpp, solve_wknappp, solve_wkpp
from prioclust.filtering import filter_clusters
from prioclust.solvers import (solve_ksupplier_outliers, solve_pcks, solve_pknapso, solve_pkso,
                               solve_pkso_powers_of_b, solve_pkso_three_radii,
                               solve_pkso_two_radii, solve_upcks_two_colors)
from prioclust.evaluate import agrees

FRACTIONS = [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), Fraction(1)]


def record(num, ok, title, elapsed, note=""):
    line = f"criterion {num:>2} {'PASS' if ok else 'FAIL'} {title} ({elapsed:.1f}s){' ' + note if note else ''}"
    print(line)
    conftest.ACCEPTANCE_LINES.append((num, line))


@contextmanager
def criterion(num, title, limit_s):
    start = perf_counter()
    stats = {}
    try:
        yield stats
    except BaseException as exc:
        record(num, False, title, perf_counter() - start, f"{type(exc).__name__}: {exc}"[:200])
        raise
    elapsed = perf_counter() - start
    note = " ".join(f"{k}={v}" for k, v in stats.items())
    if elapsed >= limit_s:
        record(num, False, title, elapsed, f"{note} exceeds {limit_s}s")
        pytest.fail(f"criterion {num} took {elapsed:.1f}s, limit {limit_s}s")
    record(num, True, title, elapsed, note)


def desk_instance(rng, seed, *, radius_set, max_clients=30, max_facilities=8, max_k=4,
                  colors=1, **extra):
    cfg = GeneratorConfig(n_clients=rng.randint(5, max_clients),
                          n_facilities=rng.randint(2, max_facilities),
                          colors=colors, k=rng.randint(1, max_k),
                          layout=rng.choice(["line", "grid"]),
                          coord_range=rng.choice([20, 60, 200]),
                          radius_set=tuple(radius_set),
                          requirement_fraction=rng.choice(FRACTIONS), **extra)
    return generate_random(cfg, seed)


def check_against_oracle(inst, sol, guarantee, constraint="cardinality"):
    """Return a failure message or None."""
    opt = brute_force_opt(inst, constraint).optimal_alpha
    if not guarantee.holds(sol.realized_ratio, opt):
        return f"ratio {sol.realized_ratio} vs oracle {opt} breaks {guarantee.tag}"
    if sol.alpha > opt:
        return f"lp alpha {sol.alpha} above oracle {opt}"
    if any(got < m for got, m in zip(sol.covered_per_color, inst.requirements)):
        return "requirement unmet"
    if not agrees(inst, sol):
        return "independent evaluation disagrees"
    return None


def finish(stats, failures, runs):
    stats["runs"] = runs
    stats["failures"] = len(failures)
    assert not failures, failures[:3]


# 1 --------------------------------------------------------------------------------

def test_criterion_01_filter_invariants():
    with criterion(1, "filter invariants on 500 random pairs", 10) as stats:
        failures = []
        for seed in range(500):
            rng = random.Random(seed)
            inst = desk_instance(rng, seed, radius_set=[1, 2, 3, Fraction(5, 2), 10], max_k=1)
            cov = {v: Fraction(rng.randint(0, 8), 8) for v in range(inst.n_clients)}
            clients = [v for v in range(inst.n_clients) if rng.random() < 0.85]
            for slack in (Fraction(0), Fraction(4) ** rng.randint(1, 3)):
                fam = filter_clusters(inst, clients, inst.radii, cov, slack)
                try:
                    check_filter_invariants(inst, clients, inst.radii, cov, fam)
                except AssertionError as exc:
                    failures.append((seed, slack, str(exc)))
        finish(stats, failures, 500)


# 2 --------------------------------------------------------------------------------

def test_criterion_02_ksupplier_outliers():
    with criterion(2, "k-supplier with outliers within 3x oracle", 120) as stats:
        failures = []
        for seed in range(100):
            rng = random.Random(1000 + seed)
            r = Fraction(rng.randint(1, 12), rng.randint(1, 3))
            inst = desk_instance(rng, seed, radius_set=[r])
            msg = check_against_oracle(inst, solve_ksupplier_outliers(inst), bounds.THREE)
            if msg:
                failures.append((seed, msg))
        finish(stats, failures, 100)


# 3 --------------------------------------------------------------------------------

def spread_instance(seed):
    rng = random.Random(2000 + seed)
    while True:
        radii = sorted({Fraction(rng.randint(1, 10)) * 10 ** rng.randint(0, 3) for _ in range(5)})
        inst = desk_instance(rng, seed, radius_set=radii)
        if max(inst.radii) >= 100 * min(inst.radii):
            return inst


def test_criterion_03_pkso_general():
    with criterion(3, "PkSO within (1+3sqrt3)x oracle, lp alpha below oracle", 300) as stats:
        failures = []
        for seed in range(200):
            inst = spread_instance(seed)
            msg = check_against_oracle(inst, solve_pkso(inst), bounds.ONE_PLUS_3_SQRT3)
            if msg:
                failures.append((seed, msg))
        finish(stats, failures, 200)


# 4 --------------------------------------------------------------------------------

def with_distinct_radii(rng, seed, radii, count):
    while True:
        inst = desk_instance(rng, seed, radius_set=radii)
        if len(set(inst.radii)) == count:
            return inst


def test_criterion_04_special_radius_structures():
    with criterion(4, "two radii (3), three radii (3.94), powers of 2 (11/3)", 180) as stats:
        failures = []
        for seed in range(100):
            rng = random.Random(3000 + seed)
            r1 = Fraction(rng.randint(2, 40), rng.randint(1, 4)) + 1
            inst = with_distinct_radii(rng, seed, [1, r1], 2)
            msg = check_against_oracle(inst, solve_pkso_two_radii(inst), bounds.THREE)
            if msg:
                failures.append(("two", seed, msg))
        adversarial = 0
        for seed in range(100):
            rng = random.Random(4000 + seed)
            if seed % 2 == 0:
                # equal ratios in [1.4, 1.6], where the best layering is worst
                a = Fraction(rng.randint(1400, 1600), 1000)
                radii = [1, a, a * a]
                adversarial += 1
            else:
                a = Fraction(rng.randint(11, 100), 10)
                radii = [1, a, a * Fraction(rng.randint(11, 100), 10)]
            inst = with_distinct_radii(rng, seed, radii, 3)
            sol = solve_pkso_three_radii(inst)
            msg = check_against_oracle(inst, sol, bounds.THREE_94)
            if msg:
                failures.append(("three", seed, msg))
            if Fraction(sol.details["layering_factor"]) > Fraction(197, 50):
                failures.append(("three", seed, "layering factor above 3.94"))
        powers = bounds.powers_guarantee(2)
        for seed in range(100):
            rng = random.Random(5000 + seed)
            inst = desk_instance(rng, seed, radius_set=[2 ** j for j in range(6)])
            msg = check_against_oracle(inst, solve_pkso_powers_of_b(inst, 2), powers)
            if msg:
                failures.append(("powers", seed, msg))
        stats["adversarial"] = adversarial
        finish(stats, failures, 300)


# 5 --------------------------------------------------------------------------------

def test_criterion_05_wkpp_engine():
    with criterion(5, "WkPP flow equals brute force on 200 DAGs", 30) as stats:
        failures = []
        for seed in range(200):
            g = random_dag(6000 + seed, max_nodes=12)
            k = random.Random(seed).randint(0, 4)
            got, want = solve_wkpp(g, k).value, brute_force_path_packing(g, k, "count")
            if got != want:
                failures.append((seed, got, want))
        finish(stats, failures, 200)


# 6 --------------------------------------------------------------------------------

def test_criterion_06_wknappp_engine():
    with criterion(6, "WKnapPP DP equals brute force on 200 forests", 30) as stats:
        failures = []
        for seed in range(200):
            g = random_forest(7000 + seed, max_leaves=12, max_weight=10)
            budget = random.Random(seed).randint(0, 30)
            got, want = solve_wknappp(g, budget).value, brute_force_path_packing(g, budget, "weight")
            if got != want:
                failures.append((seed, got, want))
        finish(stats, failures, 200)


# 7 --------------------------------------------------------------------------------

def test_criterion_07_pknapso_explicit():
    with criterion(7, "PKnapSO explicit backend within 17x oracle", 300) as stats:
        failures = []
        runs = seed = 0
        while runs < 100:
            rng = random.Random(8000 + seed)
            k = rng.randint(1, 8)
            inst = desk_instance(rng, seed, radius_set=[1, 3, 10, 40], max_facilities=10,
                                 weight_range=(0, k))
            seed += 1
            try:
                sol = solve_pknapso(inst, "explicit")
            except Infeasible:
                with pytest.raises(Infeasible):
                    brute_force_opt(inst, "knapsack")
                continue
            runs += 1
            msg = check_against_oracle(inst, sol, bounds.SEVENTEEN, "knapsack")
            if sol.weight_used > inst.k:
                msg = f"weight {sol.weight_used} over budget {inst.k}"
            if msg:
                failures.append((seed - 1, msg))
        finish(stats, failures, runs)


# 8 --------------------------------------------------------------------------------

def test_criterion_08_pcks():
    with criterion(8, "PCkS within 17x oracle, k+2c-1 centers, <=2c fractional leaves", 300) as stats:
        failures = []
        for seed in range(100):
            rng = random.Random(9000 + seed)
            c = 2 + seed % 2
            inst = desk_instance(rng, seed, radius_set=[1, 2, 5, 20], colors=c)
            sol = solve_pcks(inst)
            msg = check_against_oracle(inst, sol, bounds.SEVENTEEN)
            if sol.centers_used > inst.k + 2 * c - 1:
                msg = f"{sol.centers_used} centers with k={inst.k}, c={c}"
            if msg:
                failures.append(("instance", seed, msg))
        vertices = 0
        for seed in range(200):
            rng = random.Random(10000 + seed)
            colors = rng.randint(1, 3)
            g = random_forest(10000 + seed, colors=colors)
            totals = [sum(n.lam[i] for n in g.nodes.values()) for i in range(colors)]
            reqs = [rng.randint(0, t) // 2 for t in totals]
            v = solve_wckpp(g, reqs, rng.randint(0, 4))
            if v is None:
                continue
            vertices += 1
            if len(v.fractional_leaves) > 2 * colors:
                failures.append(("forest", seed, v.fractional_leaves))
        stats["vertices"] = vertices
        finish(stats, failures, 100)


# 9 --------------------------------------------------------------------------------

def test_criterion_09_upcks_two_colors():
    with criterion(9, "UPCkS 2-color within (2+sqrt5)x oracle, k+1 centers", 180) as stats:
        failures = []
        for branch in ("i", "ii"):
            for seed in range(100):
                rng = random.Random(11000 + seed + (0 if branch == "i" else 500))
                small = Fraction(rng.randint(1, 6))
                if branch == "i":
                    ratio = Fraction(rng.randint(1000, 1618), 1000)
                else:
                    ratio = Fraction(rng.randint(1619, 8000), 1000)
                pair = [small, small * ratio]
                if rng.random() < 0.5:
                    pair.reverse()
                inst = desk_instance(rng, seed, radius_set=pair, colors=2, radius_by_color=True)
                sol = solve_upcks_two_colors(inst)
                msg = check_against_oracle(inst, sol, bounds.TWO_PLUS_SQRT5)
                if sol.details["branch"] != branch:
                    msg = f"took branch {sol.details['branch']}"
                if sol.centers_used > inst.k + 1:
                    msg = f"{sol.centers_used} centers with k={inst.k}"
                if msg:
                    failures.append((branch, seed, msg))
        finish(stats, failures, 200)


# 10 -------------------------------------------------------------------------------

def test_criterion_10_lp_kernel():
    with criterion(10, "LP kernel on 300 random LPs", 60) as stats:
        failures = []
        optimal = 0
        for seed in range(300):
            p = random_lp(12000 + seed, max_vars=6)
            s = solve_lp(p)
            best = best_basic_objective(p)
            if s.status != OPTIMAL:
                if best is not None:
                    failures.append((seed, "missed a feasible vertex"))
                continue
            optimal += 1
            if not check_feasible(p, s.values):
                failures.append((seed, "substitution fails"))
            if rank_of_tight_set(p, s) != len(p.variables):
                failures.append((seed, "not a vertex"))
            if s.objective_value != best or s.values not in basic_solutions(p):
                failures.append((seed, f"objective {s.objective_value} vs {best}"))
        stats["optimal"] = optimal
        finish(stats, failures, 300)


# 11 -------------------------------------------------------------------------------

def test_criterion_11_determinism(tmp_path, capsys):
    with criterion(11, "byte-identical CLI outputs on rerun", 120) as stats:
        gen = ["generate", "--clients", "14", "--facilities", "6", "--colors", "2", "--k", "3",
               "--radius-set", "1,2,7", "--radius-by-color", "--weights", "1,3", "--layout", "grid"]
        commands = []
        for seed in (1, 2, 3):
            inst = f"{{d}}/inst{seed}.json"
            commands.append(gen + ["--seed", str(seed), "--out", inst])
            single = f"{{d}}/single{seed}.json"
            commands.append(["generate", "--clients", "12", "--facilities", "6", "--k", "3",
                             "--radius-set", "1,4,16", "--weights", "1,3", "--seed", str(seed),
                             "--out", single])
            for algo in ("pcks", "upcks2"):
                commands.append(["solve", "--algo", algo, "--input", inst,
                                 "--out", f"{{d}}/{algo}{seed}.json"])
            for backend in ("explicit", "cutting-plane"):
                commands.append(["solve", "--algo", "pknapso", "--backend", backend,
                                 "--input", single, "--out", f"{{d}}/{backend}{seed}.json"])
            commands.append(["oracle", "--input", inst, "--out", f"{{d}}/oracle{seed}.json"])
            commands.append(["compare", "--algo", "pcks", "--input", inst,
                             "--out", f"{{d}}/compare{seed}.json"])
        commands.append(["compare", "--algo", "pkso", "--batch", "0:8", "--radius-set", "1,10,100",
                         "--workers", "2", "--out", "{d}/batch.json"])
        outputs = []
        for run in ("a", "b"):
            d = tmp_path / run
            d.mkdir()
            for cmd in commands:
                code = cli_main([x.replace("{d}", str(d)) for x in cmd])
                assert code == 0, cmd
            outputs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
        capsys.readouterr()
        differing = [name for name in outputs[0] if outputs[0][name] != outputs[1].get(name)]
        stats["files"] = len(outputs[0])
        assert set(outputs[0]) == set(outputs[1]) and not differing, differing
