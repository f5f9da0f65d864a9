"""Command-line surface: evaluate divergences and bounds, certify LDP,
emit figure data as CSV/JSON, and run the verification suites.

Exit codes: 0 success (and verify with zero violations), 1 verify found
violations, 2 malformed input data, 3 parameter/domain errors.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from .curves import BoundCurve
from .divergence import (
    GENERATORS,
    Channel,
    Distribution,
    d_max,
    d_max_smooth,
    e_gamma,
    f_divergence,
    kl,
)
from .errors import DomainError, ValidationError
from .fdiv_bounds import FdivBoundInputs, bound_comparison_grid
from .harness import SUITE_NAMES, run_suite
from .ldp import PrivacyBudget, is_ldp, tightest_delta, tightest_epsilon
from .sdpi import CompositionParams, SdpiParams, composition_bound, linear_sdpi_coeff, nonlinear_sdpi_bound

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_BAD_DATA = 2
EXIT_BAD_PARAMS = 3


def _fmt(x: float) -> str:
    # Shortest round-trip form; infinities spell "inf" in CSV and JSON alike.
    if x == math.inf:
        return "inf"
    if x == -math.inf:
        return "-inf"
    return repr(float(x))


def _jsonable(x: float):
    if math.isinf(x):
        return _fmt(x)
    return float(x)


def _parse_distribution(text: str) -> Distribution:
    path = Path(text)
    if path.exists() and not any(c in text for c in ",;"):
        values = [float(line) for line in path.read_text().split()]
    else:
        try:
            values = [float(tok) for tok in text.split(",") if tok.strip()]
        except ValueError as exc:
            raise ValidationError(f"cannot parse distribution {text!r}: {exc}") from exc
    return Distribution(values)


def _load_channel(path: str) -> Channel:
    try:
        raw = json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise ValidationError(f"channel file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"channel file {path} is not valid JSON: {exc}") from exc
    return Channel(raw)


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[float]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buffer.getvalue()


def _curves_json(curves: Sequence[BoundCurve]) -> str:
    payload = [
        {
            "label": c.label,
            "params": {k: _jsonable(v) for k, v in sorted(c.params.items())},
            "points": [[_jsonable(x), _jsonable(y)] for x, y in c.points],
        }
        for c in curves
    ]
    return json.dumps(payload, indent=2)


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------


def _cmd_eval(args: argparse.Namespace) -> int:
    p = _parse_distribution(args.p)
    q = _parse_distribution(args.q)
    kind = args.divergence
    if kind == "egamma":
        if args.gamma is None:
            raise DomainError("--gamma is required for egamma")
        if args.gamma < 1.0:
            raise DomainError("gamma must be at least 1 for egamma")
        value = e_gamma(p, q, args.gamma)
    elif kind == "tv":
        value = e_gamma(p, q, 1.0)
    elif kind == "dmax":
        value = d_max(p, q)
    elif kind == "dmax-smooth":
        if args.delta is None:
            raise DomainError("--delta is required for dmax-smooth")
        value = d_max_smooth(p, q, args.delta)
    elif kind == "kl":
        value = kl(p, q)
    elif kind == "fdiv":
        if args.f is None:
            raise DomainError("--f is required for fdiv")
        value = f_divergence(p, q, GENERATORS[args.f])
    else:  # pragma: no cover - argparse restricts choices
        raise DomainError(f"unknown divergence {kind!r}")

    if args.format == "json":
        _emit(json.dumps({"divergence": kind, "value": _jsonable(value)}), args.out)
    else:
        _emit(_fmt(value), args.out)
    return EXIT_OK


def _cmd_check_ldp(args: argparse.Namespace) -> int:
    channel = _load_channel(args.channel)
    if args.eps is not None and args.delta is not None:
        verdict = is_ldp(channel, PrivacyBudget(args.eps, args.delta))
        payload = {"verdict": verdict}
    elif args.eps is not None:
        payload = {"tightest_delta": _jsonable(tightest_delta(channel, args.eps))}
    elif args.delta is not None:
        payload = {"tightest_epsilon": _jsonable(tightest_epsilon(channel, args.delta))}
    else:
        raise DomainError("check-ldp needs --eps, --delta, or both")
    _emit(json.dumps(payload), args.out)
    return EXIT_OK


def _check_grid_size(n: int, name: str = "--grid") -> None:
    if n < 1:
        raise DomainError(f"{name} must be at least 1, got {n!r}")


def _cmd_sdpi_curve(args: argparse.Namespace) -> int:
    _check_grid_size(args.grid)
    params = SdpiParams(PrivacyBudget(args.eps, args.delta), args.gamma_prime)
    coeff = linear_sdpi_coeff(params)
    ts = np.linspace(0.0, 1.0, args.grid)
    rows = [[t, t, coeff * t, nonlinear_sdpi_bound(params, float(t))] for t in ts]
    if args.format == "json":
        shared = {"epsilon": args.eps, "delta": args.delta, "gamma_prime": args.gamma_prime}
        curves = [
            BoundCurve("dpi", shared, [(r[0], r[1]) for r in rows]),
            BoundCurve("linear_sdpi", shared, [(r[0], r[2]) for r in rows]),
            BoundCurve("nonlinear_sdpi", shared, [(r[0], r[3]) for r in rows]),
        ]
        _emit(_curves_json(curves), args.out)
    else:
        _emit(_csv_text(["t", "dpi", "linear_sdpi", "nonlinear_sdpi"], rows), args.out)
    return EXIT_OK


def _cmd_kl_compare(args: argparse.Namespace) -> int:
    _check_grid_size(args.grid)
    if args.axis == "lambda":
        lo = args.grid_min if args.grid_min is not None else 0.01
        hi = args.grid_max if args.grid_max is not None else 0.5
        family = [float(v) for v in args.eps_values.split(",")]
    else:
        lo = args.grid_min if args.grid_min is not None else 0.1
        hi = args.grid_max if args.grid_max is not None else 3.0
        family = [float(v) for v in args.delta_values.split(",")]
    grid = np.linspace(lo, hi, args.grid)

    rows: List[List[float]] = []
    curves: List[BoundCurve] = []
    for value in family:
        if args.axis == "lambda":
            fixed = FdivBoundInputs(PrivacyBudget(value, args.delta), args.tau, lam=args.lam)
        else:
            fixed = FdivBoundInputs(PrivacyBudget(1.0, value), args.tau, lam=args.lam)
        ours, theirs = bound_comparison_grid(args.axis, fixed, grid)
        curves.extend([ours, theirs])
        for (x, y_ours), (_, y_theirs) in zip(ours.points, theirs.points):
            rows.append([x, value, y_ours, y_theirs])

    if args.format == "json":
        _emit(_curves_json(curves), args.out)
    else:
        _emit(_csv_text(["x", "series", "ours", "dasgupta"], rows), args.out)
    return EXIT_OK


def _cmd_compose(args: argparse.Namespace) -> int:
    _check_grid_size(args.grid)
    _check_grid_size(args.n_max, "--n-max")
    budget = PrivacyBudget(args.eps, args.delta)
    ts = np.linspace(0.0, 1.0, args.grid)
    rows = []
    for t in ts:
        for n in range(1, args.n_max + 1):
            params = CompositionParams(budget, args.gamma_prime, n)
            rows.append([float(t), float(n), composition_bound(params, float(t))])
    if args.format == "json":
        payload = [{"t": r[0], "n": int(r[1]), "g_n": _jsonable(r[2])} for r in rows]
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        _emit(_csv_text(["t", "n", "g_n"], rows), args.out)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    params = {}
    if args.eps is not None:
        params["eps"] = args.eps
    if args.delta is not None:
        params["delta"] = args.delta
    if args.gamma_prime is not None:
        params["gamma_prime"] = args.gamma_prime
    if args.max_alphabet is not None:
        params["max_alphabet"] = args.max_alphabet
    if args.chain_length is not None:
        params["chain_length"] = args.chain_length
    report = run_suite(args.suite, params=params, trials=args.trials, seed=args.seed)
    _emit(json.dumps(dataclasses.asdict(report), sort_keys=True), args.out)
    return EXIT_OK if report.violations == 0 else EXIT_VIOLATIONS


# ---------------------------------------------------------------------------
# Parser plumbing.
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ldpbounds",
        description="Divergences, LDP certification, and contraction bounds on finite alphabets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output file (default: stdout)")

    p_eval = sub.add_parser("eval", parents=[common], help="evaluate a divergence between two distributions")
    p_eval.add_argument(
        "--divergence",
        required=True,
        choices=("egamma", "tv", "dmax", "dmax-smooth", "kl", "fdiv"),
    )
    p_eval.add_argument("--p", required=True, help="comma-separated probabilities or a values file")
    p_eval.add_argument("--q", required=True, help="comma-separated probabilities or a values file")
    p_eval.add_argument("--gamma", type=float, default=None)
    p_eval.add_argument("--delta", type=float, default=None)
    p_eval.add_argument("--f", choices=tuple(GENERATORS), default=None)
    p_eval.set_defaults(func=_cmd_eval, format="plain")

    p_check = sub.add_parser("check-ldp", parents=[common], help="certify a channel file against a budget")
    p_check.add_argument("--channel", required=True, help="JSON file with a row-major stochastic matrix")
    p_check.add_argument("--eps", type=float, default=None)
    p_check.add_argument("--delta", type=float, default=None)
    p_check.set_defaults(func=_cmd_check_ldp)

    p_curve = sub.add_parser("sdpi-curve", parents=[common], help="tabulate DPI/linear/non-linear envelopes")
    p_curve.add_argument("--eps", type=float, required=True)
    p_curve.add_argument("--delta", type=float, required=True)
    p_curve.add_argument("--gamma-prime", type=float, required=True)
    p_curve.add_argument("--grid", type=int, default=101)
    p_curve.set_defaults(func=_cmd_sdpi_curve)

    p_compare = sub.add_parser("kl-compare", parents=[common], help="compare the KL bounds along a sweep")
    p_compare.add_argument("--axis", choices=("lambda", "epsilon"), required=True)
    p_compare.add_argument("--eps-values", default="1,2,3", help="family values for axis=lambda")
    p_compare.add_argument("--delta-values", default="0.1,0.2,0.3", help="family values for axis=epsilon")
    p_compare.add_argument("--delta", type=float, default=0.01, help="fixed delta for axis=lambda")
    p_compare.add_argument("--lam", type=float, default=0.1, help="fixed lambda (= m) for axis=epsilon")
    p_compare.add_argument("--tau", type=float, default=0.25)
    p_compare.add_argument("--grid", type=int, default=50)
    p_compare.add_argument("--grid-min", type=float, default=None)
    p_compare.add_argument("--grid-max", type=float, default=None)
    p_compare.set_defaults(func=_cmd_kl_compare)

    p_compose = sub.add_parser("compose", parents=[common], help="tabulate the n-fold composition envelope")
    p_compose.add_argument("--eps", type=float, required=True)
    p_compose.add_argument("--delta", type=float, required=True)
    p_compose.add_argument("--gamma-prime", type=float, required=True)
    p_compose.add_argument("--n-max", type=int, required=True)
    p_compose.add_argument("--grid", type=int, default=11)
    p_compose.set_defaults(func=_cmd_compose)

    p_verify = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p_verify.add_argument("--suite", required=True)
    p_verify.add_argument("--trials", type=int, default=1000)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--eps", type=float, default=None)
    p_verify.add_argument("--delta", type=float, default=None)
    p_verify.add_argument("--gamma-prime", type=float, default=None)
    p_verify.add_argument("--max-alphabet", type=int, default=None)
    p_verify.add_argument("--chain-length", type=int, default=None)
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_DATA
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS


def entrypoint() -> None:  # console_scripts hook
    raise SystemExit(main())
