"""Monte Carlo pricer for arithmetic-average Asian options under gBM.

Serves as the independent cross-check of the asymptotic prices.  Paths use
exact log-normal increments on a uniform grid and the continuous average is
approximated by the trapezoid rule, whose O(steps^-2) bias beats the
left-Riemann O(steps^-1).

Determinism contract: the normal driver of path i is a pure function of
(seed, i).  Paths are laid out in fixed blocks of ``BLOCK``; block b draws
from its own Philox stream keyed by (seed, b), and block partials are
combined in block order with exact summation.  The result is therefore
bit-identical for any number of workers.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import BudgetError, DomainError
from .params import MarketParams

# Fixed logical block size; changing it changes the path -> stream mapping
# and therefore the sampled numbers, so it is a constant, not a knob.
BLOCK = 8192

BUDGET_ENV = "ASIANVOL_MC_BUDGET"
DEFAULT_BUDGET = 2**31


@dataclass(frozen=True)
class McConfig:
    """Simulation size, grid resolution and stream seed."""

    paths: int
    steps: int
    seed: int
    antithetic: bool = False

    def __post_init__(self) -> None:
        if self.paths < 1:
            raise DomainError(f"paths must be >= 1, got {self.paths}")
        if self.steps < 2:
            raise DomainError(f"steps must be >= 2, got {self.steps}")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must fit in 64 bits")
        if self.antithetic and self.paths % 2:
            raise DomainError("antithetic pairing requires an even path count")


@dataclass(frozen=True)
class McResult:
    price: float
    std_error: float
    n_effective: int


def _mc_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError as exc:
        raise BudgetError(f"{BUDGET_ENV}={raw!r} is not an integer") from exc


def _block_payoffs(
    seed: int,
    block: int,
    n: int,
    steps: int,
    drift_dt: float,
    vol_dt: float,
    strike_ratio: float,
    is_put: bool,
    antithetic: bool,
) -> tuple[float, float]:
    """Sum and sum-of-squares of the (pair-averaged) payoffs of one block.

    Payoffs are in units of the spot.  Pure function of its arguments: the
    block's normals come from a Philox stream keyed by (seed, block).
    """
    gen = np.random.Generator(np.random.Philox(key=(block << 64) | seed))
    z = gen.standard_normal((n, steps))

    def payoffs(sign: float) -> np.ndarray:
        log_s = np.cumsum(drift_dt + sign * vol_dt * z, axis=1)
        s = np.exp(log_s)
        # trapezoid over steps panels; the t=0 sample is identically 1
        avg = (0.5 + s[:, :-1].sum(axis=1) + 0.5 * s[:, -1]) / steps
        if is_put:
            return np.maximum(strike_ratio - avg, 0.0)
        return np.maximum(avg - strike_ratio, 0.0)

    pay = payoffs(1.0)
    if antithetic:
        pay = 0.5 * (pay + payoffs(-1.0))
    return float(pay.sum()), float((pay * pay).sum())


def mc_asian_price(
    strike: float,
    params: MarketParams,
    config: McConfig,
    side: str = "call",
    workers: int = 1,
) -> McResult:
    """Discounted Monte Carlo price and standard error of the Asian option.

    ``side`` is "call" or "put".  ``workers`` only distributes blocks over
    threads; it never changes the result.  Raises BudgetError when
    paths * steps exceeds the configured budget (env ``ASIANVOL_MC_BUDGET``).
    """
    if not (strike > 0.0 and math.isfinite(strike)):
        raise DomainError(f"strike must be positive and finite, got {strike!r}")
    if side not in ("call", "put"):
        raise DomainError(f"side must be 'call' or 'put', got {side!r}")
    budget = _mc_budget()
    if config.paths * config.steps > budget:
        raise BudgetError(
            f"paths*steps = {config.paths * config.steps} exceeds budget {budget} "
            f"(raise {BUDGET_ENV} to allow larger runs)"
        )

    dt = params.maturity / config.steps
    drift_dt = (params.drift - 0.5 * params.sigma**2) * dt
    vol_dt = params.sigma * math.sqrt(dt)
    strike_ratio = strike / params.spot

    n_samples = config.paths // 2 if config.antithetic else config.paths
    blocks = [
        (b, min(BLOCK, n_samples - b * BLOCK))
        for b in range((n_samples + BLOCK - 1) // BLOCK)
    ]

    def run(block_and_size: tuple[int, int]) -> tuple[float, float]:
        b, n = block_and_size
        return _block_payoffs(
            config.seed, b, n, config.steps, drift_dt, vol_dt,
            strike_ratio, side == "put", config.antithetic,
        )

    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(run, blocks))
    else:
        partials = [run(bs) for bs in blocks]

    total = math.fsum(p[0] for p in partials)
    total_sq = math.fsum(p[1] for p in partials)
    mean = total / n_samples
    if n_samples > 1:
        var = max(total_sq - n_samples * mean * mean, 0.0) / (n_samples - 1)
        std_err = math.sqrt(var / n_samples)
    else:
        std_err = math.inf
    scale = params.spot * math.exp(-params.rate * params.maturity)
    return McResult(price=scale * mean, std_error=scale * std_err, n_effective=n_samples)


def mc_average_mean(params: MarketParams, config: McConfig, workers: int = 1) -> tuple[float, float]:
    """Sample mean of the trapezoid average A_T and its standard error.

    Uses a zero-strike call (payoff identically A_T - K with K negligible),
    so the estimate shares the deterministic stream layout of
    :func:`mc_asian_price`.  Its expectation is the forward ``A_fwd`` up to
    the trapezoid quadrature bias.
    """
    tiny = 1e-12 * params.spot
    res = mc_asian_price(tiny, params, config, side="call", workers=workers)
    growth = math.exp(params.rate * params.maturity)
    return res.price * growth + tiny, res.std_error * growth
