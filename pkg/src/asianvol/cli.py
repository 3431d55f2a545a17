"""Command-line interface: spot pricing, benchmark reproduction, smile curves, MC checks.

Exit codes: 0 success, 1 failing benchmark cells, 2 flag validation,
3 domain/budget errors (e.g. the NLO estimate invoked off the money).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

from . import benchmarks
from .bspricer import NLO, Side, asian_price
from .errors import BudgetError, ConvergenceError, DomainError
from .mcoracle import McConfig, mc_asian_price
from .nlo import nlo_variance_atm
from .params import MarketParams
from .volexp import Order, forward_price, implied_variance

METHOD_CHOICES = ("lead", "atm", "lin", "quad", "nlo", "mc")

_ORDER_BY_NAME = {o.value: o for o in Order}


def _market_from_args(args: argparse.Namespace) -> MarketParams:
    return MarketParams(
        spot=args.spot,
        rate=args.rate,
        sigma=args.vol,
        maturity=args.maturity,
        dividend=args.dividend,
    )


def _emit(records: list[dict], fmt: str, header: Optional[Sequence[str]] = None) -> None:
    if fmt == "json":
        for rec in records:
            print(json.dumps(rec))
        return
    if header is None:
        header = list(records[0]) if records else []
    print(",".join(header))
    for rec in records:
        print(",".join("" if rec[h] is None else str(rec[h]) for h in header))


def cmd_price(args: argparse.Namespace) -> int:
    params = _market_from_args(args)
    side = Side(args.side)
    if args.method == "mc":
        config = McConfig(paths=args.paths, steps=args.steps, seed=args.seed, antithetic=args.antithetic)
        result = mc_asian_price(args.strike, params, config, side=side.value, workers=args.workers)
        _emit(
            [{"price": f"{result.price:.6f}", "std_error": f"{result.std_error:.2e}"}],
            args.format,
            header=["price", "std_error"],
        )
        return 0
    method = NLO if args.method == "nlo" else _ORDER_BY_NAME[args.method]
    price = asian_price(args.strike, params, method=method, side=side)
    _emit([{"price": f"{price:.6f}"}], args.format, header=["price"])
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    report = benchmarks.run_benchmark(args.table, tolerance=args.tolerance)
    if args.format == "json":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.to_csv())
    return 0 if report.all_passed else 1


def cmd_smile(args: argparse.Namespace) -> int:
    if args.k_min <= 0 or args.k_max <= args.k_min:
        raise DomainError(f"need 0 < k-min < k-max, got [{args.k_min}, {args.k_max}]")
    if args.n_points < 2:
        raise DomainError(f"n-points must be >= 2, got {args.n_points}")
    params = _market_from_args(args)
    a_fwd = forward_price(params)
    k_atm = a_fwd / params.spot
    step = (args.k_max - args.k_min) / (args.n_points - 1)
    grid = [(args.k_min + i * step, 0) for i in range(args.n_points)]
    grid.append((k_atm, 1))
    grid.sort()

    method = NLO if args.method == "nlo" else _ORDER_BY_NAME[args.method]
    records = []
    for k, is_atm in grid:
        strike = k * params.spot
        if method == NLO:
            price = asian_price(strike, params, method=method)
            vol = math.sqrt(nlo_variance_atm(params))
        else:
            vol = math.sqrt(implied_variance(strike, params, method).total_sq)
            price = asian_price(strike, params, method=method)
        records.append(
            {"k": repr(k), "sigma_ln": f"{vol:.8f}", "price": f"{price:.6f}", "atm": is_atm}
        )
    _emit(records, args.format, header=["k", "sigma_ln", "price", "atm"])
    return 0


def cmd_mc_check(args: argparse.Namespace) -> int:
    if args.case is not None:
        case = benchmarks.load_cases()[args.case]
        params = case.market_params()
        strike = case.strike
    else:
        params = _market_from_args(args)
        strike = args.strike
    config = McConfig(paths=args.paths, steps=args.steps, seed=args.seed, antithetic=args.antithetic)
    mc = mc_asian_price(strike, params, config, workers=args.workers)
    ref = asian_price(strike, params, method=Order.LINEAR)
    diff = mc.price - ref
    gate = max(args.z_max * mc.std_error, args.abs_floor)
    ok = abs(diff) <= gate
    _emit(
        [
            {
                "mc_price": f"{mc.price:.6f}",
                "std_error": f"{mc.std_error:.2e}",
                "ref_price": f"{ref:.6f}",
                "diff": f"{diff:.2e}",
                "status": "PASS" if ok else "FAIL",
            }
        ],
        args.format,
        header=["mc_price", "std_error", "ref_price", "diff", "status"],
    )
    return 0 if ok else 1


def _add_market_flags(parser: argparse.ArgumentParser, with_strike: bool, required: bool = True) -> None:
    if with_strike:
        parser.add_argument("--strike", "-K", type=float, required=required, help="strike price")
    parser.add_argument("--spot", "-S", type=float, required=required, help="spot price")
    parser.add_argument("--rate", "-r", type=float, default=0.0, help="risk-free rate (cc)")
    parser.add_argument("--dividend", "-q", type=float, default=0.0, help="dividend yield (cc)")
    parser.add_argument("--vol", "-v", type=float, required=required, help="lognormal volatility")
    parser.add_argument("--maturity", "-T", type=float, required=required, help="maturity in years")


def _add_mc_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--paths", type=int, default=100_000, help="Monte Carlo paths")
    parser.add_argument("--steps", type=int, default=252, help="time-grid steps")
    parser.add_argument("--antithetic", action="store_true", help="pair paths with flipped drivers")
    parser.add_argument("--workers", type=int, default=1, help="threads over path blocks")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")
    common.add_argument("--seed", type=int, default=0, help="Monte Carlo seed (u64)")

    parser = argparse.ArgumentParser(
        prog="asianvol",
        description="Arithmetic-average Asian option pricing via short-maturity volatility expansions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_price = sub.add_parser("price", parents=[common], help="price one option")
    _add_market_flags(p_price, with_strike=True)
    p_price.add_argument("--side", choices=("call", "put"), default="call")
    p_price.add_argument("--method", choices=METHOD_CHOICES, default="lin")
    _add_mc_flags(p_price)
    p_price.set_defaults(func=cmd_price)

    p_bench = sub.add_parser("bench", parents=[common], help="reproduce the reference tables")
    p_bench.add_argument("--table", type=int, choices=(1, 2), default=1)
    p_bench.add_argument("--tolerance", type=float, default=1e-6, help="absolute pass tolerance")
    p_bench.set_defaults(func=cmd_bench)

    p_smile = sub.add_parser("smile", parents=[common], help="emit a volatility smile curve")
    _add_market_flags(p_smile, with_strike=False)
    p_smile.add_argument("--k-min", type=float, default=0.5, help="lowest strike ratio K/S0")
    p_smile.add_argument("--k-max", type=float, default=2.0, help="highest strike ratio K/S0")
    p_smile.add_argument("--n-points", type=int, default=41)
    p_smile.add_argument("--method", choices=("lead", "atm", "lin", "quad", "nlo"), default="atm")
    p_smile.set_defaults(func=cmd_smile)

    p_check = sub.add_parser("mc-check", parents=[common], help="cross-check a price against Monte Carlo")
    p_check.add_argument("--case", type=int, choices=range(1, 8), help="benchmark case id")
    _add_market_flags(p_check, with_strike=True, required=False)
    _add_mc_flags(p_check)
    p_check.add_argument("--z-max", type=float, default=3.0, help="allowed |diff| in std errors")
    p_check.add_argument("--abs-floor", type=float, default=2e-4, help="absolute tolerance floor")
    p_check.set_defaults(func=cmd_mc_check)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "mc-check" and args.case is None:
        for name in ("strike", "spot", "vol", "maturity"):
            if getattr(args, name) is None:
                parser.error(f"mc-check requires --case or explicit --{name}")
    try:
        return args.func(args)
    except (DomainError, BudgetError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
