"""Command-line front end: generate, solve, oracle, compare.

Exit codes: 0 solution found, 2 proven infeasible, 3 undecided, 1 usage or
input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import bounds
from .errors import Infeasible, InstanceError, InvariantViolation, PreconditionError, Undecided
from .generate import GeneratorConfig, generate_random
from .instance import dump_instance, format_rational, instance_digest, load_instance, parse_rational
from .oracle import OracleGuardExceeded, brute_force_opt
from .solvers import ALGORITHMS, GUARANTEE_OF, Solution

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_UNDECIDED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rationals(text: str) -> list[Fraction]:
    try:
        return [parse_rational(x) for x in text.split(",") if x.strip()]
    except InstanceError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except InstanceError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _weights(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected LO,HI") from exc
    return lo, hi


def _seeds(text: str) -> list[int]:
    try:
        if ":" in text:
            a, b = text.split(":")
            return list(range(int(a), int(b)))
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected START:STOP or a comma list") from exc


def _add_generator_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--clients", type=int, default=10)
    p.add_argument("--facilities", type=int, default=4)
    p.add_argument("--colors", type=int, default=1)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--radius-set", type=_rationals, default=[Fraction(1)],
                   help="comma-separated radii, e.g. 1,2,5/2")
    p.add_argument("--radius-by-color", action="store_true",
                   help="give every client of color i the i-th radius")
    p.add_argument("--requirements", type=_rationals, default=None,
                   help="per-color coverage as a fraction of the color class "
                        "(one value for all colors, or one per color); default 1/2")
    p.add_argument("--layout", choices=["line", "grid"], default="line")
    p.add_argument("--coord-range", type=int, default=50)
    p.add_argument("--weights", type=_weights, default=(1, 1), help="facility weight range LO,HI")


def _config(args) -> GeneratorConfig:
    req = args.requirements
    if req is None:
        frac = Fraction(1, 2)
    elif len(req) == 1:
        frac = req[0]
    elif len(req) == args.colors:
        frac = list(req)
    else:
        raise UsageError(f"--requirements needs 1 or {args.colors} values, got {len(req)}")
    for f in (frac if isinstance(frac, list) else [frac]):
        if not 0 <= f <= 1:
            raise UsageError("--requirements values must lie in [0, 1]")
    return GeneratorConfig(n_clients=args.clients, n_facilities=args.facilities, colors=args.colors,
                           k=args.k, layout=args.layout, coord_range=args.coord_range,
                           radius_set=tuple(args.radius_set), requirement_fraction=frac,
                           weight_range=args.weights, radius_by_color=args.radius_by_color)


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--algo", required=True, choices=sorted(ALGORITHMS))
    p.add_argument("--b", type=_rational, default=None, help="base for pkso-powers, p/q allowed")
    p.add_argument("--backend", choices=["explicit", "cutting-plane"], default="explicit")
    p.add_argument("--max-iterations", type=int, default=500)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="prioclust", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a random instance")
    _add_generator_flags(g)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", default="-")

    s = sub.add_parser("solve", help="run one solver")
    _add_solver_flags(s)
    s.add_argument("--input", required=True)
    s.add_argument("--out", default="-")

    o = sub.add_parser("oracle", help="exhaustive optimum")
    o.add_argument("--input", required=True)
    o.add_argument("--constraint", choices=["cardinality", "knapsack"], default="cardinality")
    o.add_argument("--out", default="-")

    c = sub.add_parser("compare", help="solver versus oracle with an exact bound check")
    _add_solver_flags(c)
    c.add_argument("--input", help="instance file (omit with --batch)")
    c.add_argument("--batch", type=_seeds, default=None,
                   help="seeds START:STOP; instances come from the generator flags")
    _add_generator_flags(c)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--out", default="-")
    return parser


# -- helpers ------------------------------------------------------------------------

def _read_instance(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    return load_instance(text)


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def _dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def run_solver(inst, algo: str, b=None, backend="explicit", max_iterations=500) -> Solution:
    solver = ALGORITHMS[algo]
    if algo == "pkso-powers":
        if b is None:
            raise UsageError("pkso-powers needs --b")
        return solver(inst, b)
    if algo == "pknapso":
        return solver(inst, backend=backend, max_iterations=max_iterations)
    return solver(inst)


def guarantee_for(algo: str, b=None) -> bounds.Guarantee:
    if algo == "pkso-powers":
        return bounds.powers_guarantee(b)
    return bounds.GUARANTEES[GUARANTEE_OF[algo]]


def oracle_dict(res) -> dict:
    return {"optimal_alpha": format_rational(res.optimal_alpha), "witness": list(res.witness),
            "enumerated": res.enumerated}


def compare_report(inst, algo: str, b=None, backend="explicit", max_iterations=500) -> dict:
    constraint = "knapsack" if algo == "pknapso" else "cardinality"
    sol = run_solver(inst, algo, b, backend, max_iterations)
    res = brute_force_opt(inst, constraint)
    g = guarantee_for(algo, b)
    return {
        "instance_digest": instance_digest(inst),
        "algorithm": algo,
        "solution": sol.to_dict(),
        "oracle": oracle_dict(res),
        "certified_bound": {"tag": g.tag, "pass": g.holds(sol.realized_ratio, res.optimal_alpha),
                            "lp_below_oracle": sol.alpha <= res.optimal_alpha},
    }


def _batch_one(job):
    seed, cfg, algo, b, backend, max_iterations = job
    inst = generate_random(cfg, seed)
    try:
        report = compare_report(inst, algo, b, backend, max_iterations)
    except Infeasible as exc:
        report = {"instance_digest": instance_digest(inst), "algorithm": algo,
                  "infeasible": str(exc)}
    report["seed"] = seed
    return report


# -- commands -----------------------------------------------------------------------

def cmd_generate(args) -> int:
    inst = generate_random(_config(args), args.seed)
    _write(args.out, dump_instance(inst))
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = _read_instance(args.input)
    sol = run_solver(inst, args.algo, args.b, args.backend, args.max_iterations)
    _write(args.out, sol.to_json())
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = _read_instance(args.input)
    _write(args.out, _dumps(oracle_dict(brute_force_opt(inst, args.constraint))))
    return EXIT_OK


def cmd_compare(args) -> int:
    if args.batch is None:
        if not args.input:
            raise UsageError("compare needs --input or --batch")
        inst = _read_instance(args.input)
        report = compare_report(inst, args.algo, args.b, args.backend, args.max_iterations)
        _write(args.out, _dumps(report))
        return EXIT_OK
    cfg = _config(args)
    jobs = [(seed, cfg, args.algo, args.b, args.backend, args.max_iterations) for seed in args.batch]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            reports = list(pool.map(_batch_one, jobs))
    else:
        reports = [_batch_one(j) for j in jobs]
    reports.sort(key=lambda r: r["seed"])
    passed = sum(1 for r in reports if r.get("certified_bound", {}).get("pass"))
    summary = {"algorithm": args.algo, "runs": len(reports), "passed": passed, "reports": reports}
    _write(args.out, _dumps(summary))
    return EXIT_OK


COMMANDS = {"generate": cmd_generate, "solve": cmd_solve, "oracle": cmd_oracle, "compare": cmd_compare}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except Undecided as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except (UsageError, InstanceError, PreconditionError, OracleGuardExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
