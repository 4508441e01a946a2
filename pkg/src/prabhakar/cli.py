"""Command-line interface.

Subcommands::

    prabhakar eval {ml3,kernel,wright,spectral,bound-const} [params] --at X ...
    prabhakar apply --op KIND [params] INPUT.csv [-o OUTPUT.csv]
    prabhakar verify {identities,inequalities,normalization,laplace} [--grids N,M]
    prabhakar figures {1,2,3} --out DIR

Exit codes: 0 success, 1 a verification case failed, 2 invalid input
(domain or CSV), 3 numerical failure (non-convergence), 4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import sys
from collections.abc import Callable, Sequence
from typing import Any

import numpy as np

from prabhakar import bounds, oracles, probability, reporting
from prabhakar.errors import DomainError, NonConvergent, PrabhakarError
from prabhakar.grid import UniformGrid, _fmt, read_csv, write_csv
from prabhakar.operators import OperatorSpec, OpKind, apply
from prabhakar.specfun import (
    DEFAULT_CONFIG,
    EPS,
    PrabhakarParams,
    SeriesConfig,
    kernel_values,
    ml3_values,
    spectral_K,
    uniform_bound,
    wright_values,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

BOUND_CONSTS = ("uniform", "M", "M1", "M2", "Ktilde", "K")


def _grid_spec(text: str) -> UniformGrid:
    try:
        a, b, n = text.split(",")
        return UniformGrid(float(a), float(b), int(n))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a,b,n: {text!r}") from exc


def _int_list(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from exc
    if not vals or any(v < 2 for v in vals):
        raise argparse.ArgumentTypeError(f"grid sizes must be >= 2: {text!r}")
    return vals


def _need(args: argparse.Namespace, *names: str) -> list[float]:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise DomainError("missing parameter(s): " + ", ".join("--" + m for m in missing))
    return [getattr(args, n) for n in names]


def _config(args: argparse.Namespace, base: SeriesConfig = DEFAULT_CONFIG) -> SeriesConfig:
    if args.tol is None:
        return base
    return dataclasses.replace(base, tol=args.tol)


# {{{ eval


def _points(args: argparse.Namespace) -> np.ndarray:
    pts: list[float] = list(args.at or [])
    if args.grid is not None:
        pts.extend(args.grid.nodes.tolist())
    if not pts:
        raise DomainError("no evaluation points: give --at and/or --grid")
    return np.array(pts, dtype=float)


def _bound_const(args: argparse.Namespace, x: float, config: SeriesConfig) -> float:
    name = args.name
    if name == "uniform":
        alpha, beta_, gamma, omega = _need(args, "alpha", "beta", "gamma", "omega")
        return uniform_bound(alpha, beta_, gamma, omega)
    a = args.a
    if name == "M":
        alpha, beta_, gamma, omega, p = _need(args, "alpha", "beta", "gamma", "omega", "p")
        return bounds.const_M(alpha, beta_, gamma, omega, a, x, p)
    if name in ("M1", "M2"):
        rho, gamma, mu, nu = _need(args, "rho", "gamma", "mu", "nu")
        m1, m2 = bounds.const_M1_M2(rho, gamma, mu, nu, a, x, config)
        return m1 if name == "M1" else m2
    rho, gamma, mu, omega = _need(args, "rho", "gamma", "mu", "omega")
    kt, k = bounds.const_Ktilde_K(rho, gamma, mu, omega, a, x, args.m, config, power=args.power)
    if name == "Ktilde":
        return kt
    if k is None:
        raise DomainError(f"K needs mu in (0, 1): {mu}")
    return k


def cmd_eval(args: argparse.Namespace, out: io.TextIOBase) -> int:
    """CSV ``x,value,err_estimate`` for the requested function."""
    config = _config(args)
    x = _points(args)
    kind = args.kind
    if kind == "ml3":
        rho, mu, gamma = _need(args, "rho", "mu", "gamma")
        values, errs = ml3_values(rho, mu, gamma, x, config)
    elif kind == "kernel":
        rho, mu, omega, gamma = _need(args, "rho", "mu", "omega", "gamma")
        values = kernel_values(rho, mu, omega, gamma, x, config)
        # the kernel is t^(mu-1) times ml3; scale the series estimate alike
        _, errs = ml3_values(rho, mu, gamma, omega * x**rho, config)
        errs = errs * x ** (mu - 1.0)
    elif kind == "wright":
        alpha, rho = _need(args, "alpha", "rho")
        values, errs = wright_values(alpha, rho, x, config)
    elif kind == "spectral":
        alpha, beta_, gamma = _need(args, "alpha", "beta", "gamma")
        if np.any(x < 0):
            raise DomainError("spectral kernel needs r >= 0")
        values = np.asarray(spectral_K(alpha, beta_, gamma, x), dtype=float)
        # closed form: rounding only
        errs = 8.0 * EPS * np.abs(values)
    else:
        values = np.array([_bound_const(args, float(xi), config) for xi in x])
        # series constants are summed to relative tolerance config.tol
        errs = config.tol * np.abs(values)

    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["x", "value", "err_estimate"])
    for xi, vi, ei in zip(x, np.atleast_1d(values), np.atleast_1d(errs)):
        writer.writerow([_fmt(xi), _fmt(vi), _fmt(ei)])
    return EXIT_OK


# }}}


# {{{ apply


def _operator_spec(args: argparse.Namespace) -> OperatorSpec:
    kind = OpKind(args.op)
    if kind in (OpKind.RL_INTEGRAL, OpKind.RL_DERIVATIVE, OpKind.CAPUTO):
        return OperatorSpec(kind, alpha=_need(args, "alpha")[0])
    if kind == OpKind.HILFER:
        mu, nu = _need(args, "mu", "nu")
        return OperatorSpec(kind, mu=mu, nu=nu)
    if kind in (OpKind.PRAB_INTEGRAL, OpKind.PRAB_DERIVATIVE, OpKind.PRAB_DERIVATIVE_REGULARIZED):
        rho, mu, omega, gamma = _need(args, "rho", "mu", "omega", "gamma")
        return OperatorSpec(kind, P=PrabhakarParams(rho=rho, mu=mu, omega=omega, gamma=gamma))
    gamma, mu, rho, omega = _need(args, "gamma", "mu", "rho", "omega")
    nu = _need(args, "nu")[0] if kind == OpKind.HILFER_PRABHAKAR else None
    return OperatorSpec(kind, gamma=gamma, mu=mu, nu=nu, rho=rho, omega=omega)


def cmd_apply(args: argparse.Namespace, out: io.TextIOBase) -> int:
    """Read ``t,value`` samples, apply the operator, write ``t,value,flag``."""
    spec = _operator_spec(args)
    if args.input == "-":
        sfn = read_csv(sys.stdin)
    else:
        sfn = read_csv(args.input)
    result = apply(sfn, spec, _config(args))
    if args.output:
        write_csv(result, args.output)
    else:
        write_csv(result, out)
    return EXIT_OK


# }}}


# {{{ verify


def _suite_runner(args: argparse.Namespace) -> tuple[Callable[[], list[dict[str, Any]]], dict[str, Any]]:
    suite = args.suite
    if suite == "identities":
        config = _config(args)
        grids = args.grids or (256, 512)
        return lambda: oracles.run_identity_suite(grids, config), {"grids": list(grids)}
    if suite == "inequalities":
        config = _config(args)
        grids = args.grids or (256, 512)
        return (
            lambda: bounds.run_inequality_suite(grids, args.seed, config),
            {"grids": list(grids)},
        )
    if suite == "normalization":
        return probability.run_normalization_suite, {}
    config = _config(args, probability.WRIGHT_CONFIG)
    panels = args.grids or (8, 16)
    return lambda: probability.run_laplace_suite(panels, config), {"panels": list(panels)}


def cmd_verify(args: argparse.Namespace, out: io.TextIOBase) -> int:
    """Run a suite and write its JSON report; exit 1 if any case fails."""
    run, extra = _suite_runner(args)
    cases = run()
    tol = args.tol if args.tol is not None else DEFAULT_CONFIG.tol
    config = {"tol": tol, "seed": args.seed, **extra}
    text = reporting.dumps(reporting.suite_report(args.suite, cases, config))
    if args.output:
        with open(args.output, "w") as fp:
            fp.write(text)
    else:
        out.write(text)
    return EXIT_OK if all(c["holds"] for c in cases) else EXIT_FAIL


# }}}


def cmd_figures(args: argparse.Namespace, out: io.TextIOBase) -> int:
    for path in probability.write_figure_csv(args.which, args.out):
        out.write(f"{path}\n")
    return EXIT_OK


def _add_params(p: argparse.ArgumentParser, names: Sequence[str]) -> None:
    for name in names:
        p.add_argument(f"--{name}", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prabhakar", description=__doc__.splitlines()[0])
    parser.add_argument("--tol", type=float, default=None, help="series truncation tolerance")
    parser.add_argument("--seed", type=int, default=7)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a special function or constant")
    p.add_argument("kind", choices=("ml3", "kernel", "wright", "spectral", "bound-const"))
    _add_params(p, ("rho", "mu", "gamma", "omega", "alpha", "beta", "nu", "p"))
    p.add_argument("--name", choices=BOUND_CONSTS, default="uniform", help="bound-const only")
    p.add_argument("--a", type=float, default=0.0, help="base point for interval constants")
    p.add_argument("--m", type=int, default=None, help="integer order for Ktilde")
    p.add_argument("--power", choices=("stated", "rho"), default="stated")
    p.add_argument("--at", type=float, action="append", help="evaluation point (repeatable)")
    p.add_argument("--grid", type=_grid_spec, default=None, metavar="A,B,N")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("apply", help="apply a fractional operator to CSV samples")
    p.add_argument("--op", required=True, choices=[k.value for k in OpKind])
    _add_params(p, ("alpha", "mu", "nu", "gamma", "rho", "omega"))
    p.add_argument("input", help="t,value CSV ('-' for stdin)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=("identities", "inequalities", "normalization", "laplace"))
    p.add_argument("--grids", type=_int_list, default=None, metavar="N,M")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figures", help="write spectral-kernel curves as CSV")
    p.add_argument("which", type=int, choices=(1, 2, 3))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_figures)

    # global options are also accepted after the subcommand
    for sp in sub.choices.values():
        sp.add_argument("--tol", type=float, default=argparse.SUPPRESS)
        sp.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    return parser


def main(argv: Sequence[str] | None = None, out: io.TextIOBase | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = out if out is not None else sys.stdout
    try:
        if args.tol is not None and not 0.0 < args.tol < 1.0:
            raise DomainError(f"--tol must be in (0, 1): {args.tol}")
        return args.func(args, out)
    except NonConvergent as exc:
        print(f"prabhakar: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except PrabhakarError as exc:
        print(f"prabhakar: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"prabhakar: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
