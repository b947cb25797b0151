"""Command-line front end.

Exit codes: 0 success, 2 unreadable/malformed input, 3 domain-invariant violation,
4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .engine import N_MAX, ranking_guesswork
from .errors import ParseError, SizeError, ValidationError
from .game import simulate_game
from .harness import CAMPAIGNS, SuiteConfig, Tolerances, run_suite
from .serialization import load_ensemble, load_json, povm_from_dict, result_to_dict
from .solver import BRACKET_ONLY, DEFAULT_TRIAL_POVMS, closed_form_guesswork, guesswork_bracket

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_VERIFY = 0, 2, 3, 4


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("GUESSWORK_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise ParseError(f"GUESSWORK_SEED must be an integer, got {env!r}") from None


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _nonneg_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _load(path):
    if not os.path.exists(path):
        raise ParseError(f"{path}: no such file")
    return load_ensemble(path)


def cmd_compute(args, out) -> int:
    ens = _load(args.path)
    res = closed_form_guesswork(ens, tol=args.tol, n_max=args.n_max, trial_povms=args.trials, seed=_seed(args))
    if args.format == "json":
        print(json.dumps(result_to_dict(res)), file=out)
        return EXIT_OK
    lo, hi = res.bracket
    print(f"method: {res.method}", file=out)
    if res.value is None:
        print("value: n/a (no dominant ranking exists; bracket only)", file=out)
    else:
        print(f"value: {res.value:.12f}", file=out)
        print("sigma_star: " + " ".join(map(str, res.sigma_star)), file=out)
    print(f"bracket: [{lo:.12f}, {hi:.12f}]", file=out)
    if res.method == BRACKET_ONLY:
        print(f"witness: {res.witness}", file=out)
    return EXIT_OK


def cmd_bounds(args, out) -> int:
    ens = _load(args.path)
    b = guesswork_bracket(ens, trial_povms=args.trials, seed=_seed(args), n_max=args.n_max)
    if args.format == "json":
        print(json.dumps({"lower": b.lower, "upper": b.upper, "witness": b.witness}), file=out)
    else:
        print(f"lower: {b.lower:.12f}", file=out)
        print(f"upper: {b.upper:.12f}", file=out)
        print(f"witness: {b.witness}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    tolerances = Tolerances()
    if args.tol is not None:
        tolerances = Tolerances(*(args.tol,) * 5)
    cfg = SuiteConfig(seed=_seed(args), trials=args.trials, tolerances=tolerances, properties=tuple(args.property) or None)
    reports = run_suite(cfg)
    for r in reports:
        if args.format == "json":
            print(r.to_json(), file=out)
        else:
            worst = "n/a" if r.worst_violation is None else f"{r.worst_violation:.3e}"
            status = "PASS" if r.passed else "FAIL"
            print(
                f"{status} {r.property_name}: trials={r.trials} passes={r.passes} failures={r.failures} "
                f"skips={r.skips} worst={worst} tol={r.tolerance:.0e}",
                file=out,
            )
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY


def cmd_simulate(args, out) -> int:
    ens = _load(args.path)
    if args.povm:
        povm = povm_from_dict(load_json(args.povm))
    else:
        res = closed_form_guesswork(ens, tol=args.tol, n_max=args.n_max, trial_povms=0)
        if res.optimal_povm is None:
            raise ValidationError("no dominant ranking exists, so there is no optimal ranking POVM to simulate")
        povm = res.optimal_povm
    stats = simulate_game(ens, povm, args.shots, seed=_seed(args))
    target = ranking_guesswork(ens, povm)
    if args.format == "json":
        print(json.dumps({**json.loads(stats.to_json()), "expected": target}), file=out)
    else:
        print(f"shots: {stats.shots}", file=out)
        print(f"mean_guesses: {stats.mean_guesses:.6f} +/- {stats.std_error:.6f}", file=out)
        print(f"expected: {target:.6f}", file=out)
        print("histogram: " + " ".join(map(str, stats.histogram)), file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="RNG seed (fallback: $GUESSWORK_SEED, then 0)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--tol", type=_positive_float, default=None)
    common.add_argument("--n-max", type=_positive_int, default=N_MAX, dest="n_max")

    parser = argparse.ArgumentParser(prog="guesswork", description="Quantum guesswork of finite ensembles.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="closed-form guesswork, or a bracket")
    p.add_argument("path")
    p.add_argument("--trials", type=_nonneg_int, default=DEFAULT_TRIAL_POVMS, help="random POVMs for the fallback bracket")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("bounds", parents=[common], help="entropic lower bound and best candidate measurement")
    p.add_argument("path")
    p.add_argument("--trials", type=_nonneg_int, default=DEFAULT_TRIAL_POVMS)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", parents=[common], help="run randomized property campaigns")
    p.add_argument("--trials", type=_nonneg_int, default=1000)
    p.add_argument("--property", action="append", default=[], choices=sorted(CAMPAIGNS))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", parents=[common], help="Monte-Carlo guessing game")
    p.add_argument("path")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--optimal", action="store_true", help="use the optimal ranking POVM")
    src.add_argument("--povm", help="JSON file with a ranking POVM")
    p.add_argument("--shots", type=_positive_int, default=100_000)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValidationError, SizeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
