"""Black-Scholes vanilla pricing on a forward, Asian price assembly, and implied vol.

An Asian option is priced as a European option on the forward average
A_fwd with the equivalent log-normal volatility supplied by the expansion
modules:

    C = e^{-rT} [ A_fwd Phi(d1) - K Phi(d2) ],
    d_{1,2} = ( log(A_fwd/K) +- Sigma^2 T / 2 ) / (Sigma sqrt(T)).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

from . import nlo, volexp
from .errors import DomainError, PriceBoundsError, UnsupportedStrikeError
from .params import MarketParams
from .rootfind import bracketed_root
from .volexp import Order

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)

# implied-vol solver contract
IV_BRACKET = (1e-8, 5.0)
IV_FTOL = 1e-12
VEGA_FLOOR = 1e-16

#: selector for the resummed-rate ATM estimate in :func:`asian_price`
NLO = "nlo"

VolMethod = Union[Order, str]


class Side(enum.Enum):
    CALL = "call"
    PUT = "put"


@dataclass(frozen=True)
class VanillaQuote:
    """One Black-Scholes quote on a forward."""

    forward: float
    strike: float
    vol: float
    maturity: float
    df: float
    side: Side = Side.CALL

    def __post_init__(self) -> None:
        if not (self.forward > 0.0 and math.isfinite(self.forward)):
            raise DomainError(f"forward must be positive and finite, got {self.forward!r}")
        if not (self.strike > 0.0 and math.isfinite(self.strike)):
            raise DomainError(f"strike must be positive and finite, got {self.strike!r}")
        if not (self.vol >= 0.0 and math.isfinite(self.vol)):
            raise DomainError(f"vol must be nonnegative and finite, got {self.vol!r}")
        if not (self.maturity > 0.0 and math.isfinite(self.maturity)):
            raise DomainError(f"maturity must be positive and finite, got {self.maturity!r}")
        if not (0.0 < self.df <= 1.0):
            raise DomainError(f"discount factor must be in (0, 1], got {self.df!r}")


def norm_cdf(z: float) -> float:
    """Standard normal CDF via the complementary error function (abs err <= 1e-15)."""
    return 0.5 * math.erfc(-z / _SQRT2)


def norm_pdf(z: float) -> float:
    return _INV_SQRT_2PI * math.exp(-0.5 * z * z)


def _d12(quote: VanillaQuote) -> tuple[float, float]:
    stdev = quote.vol * math.sqrt(quote.maturity)
    lm = math.log(quote.forward / quote.strike)
    d1 = lm / stdev + 0.5 * stdev
    return d1, d1 - stdev


def bs_price(quote: VanillaQuote) -> float:
    """Discounted Black-Scholes price; deterministic payoff at vol = 0."""
    if quote.vol == 0.0:
        intrinsic = quote.forward - quote.strike
        if quote.side is Side.PUT:
            intrinsic = -intrinsic
        return quote.df * max(intrinsic, 0.0)
    d1, d2 = _d12(quote)
    if quote.side is Side.CALL:
        return quote.df * (quote.forward * norm_cdf(d1) - quote.strike * norm_cdf(d2))
    return quote.df * (quote.strike * norm_cdf(-d2) - quote.forward * norm_cdf(-d1))


def bs_vega(quote: VanillaQuote) -> float:
    """dPrice/dVol; identical for calls and puts."""
    if quote.vol == 0.0:
        return 0.0
    d1, _ = _d12(quote)
    return quote.df * quote.forward * norm_pdf(d1) * math.sqrt(quote.maturity)


def asian_price(
    strike: float,
    params: MarketParams,
    method: VolMethod = volexp.DEFAULT_ORDER,
    side: Side = Side.CALL,
) -> float:
    """Asian option price from the selected equivalent-volatility method.

    ``method`` is an expansion :class:`~asianvol.volexp.Order` or the string
    ``"nlo"`` for the resummed-rate ATM estimate.  The NLO estimate is only
    defined at the money: strikes away from the spot-ATM point raise
    UnsupportedStrikeError because the general-strike resummed volatility has
    no closed form here.
    """
    if not (strike > 0.0 and math.isfinite(strike)):
        raise DomainError(f"strike must be positive and finite, got {strike!r}")
    a_fwd = volexp.forward_price(params)
    if method == NLO:
        if abs(strike / params.spot - 1.0) > 1e-9:
            raise UnsupportedStrikeError(
                f"NLO estimate supports only the ATM strike K = S0 = {params.spot}; "
                f"got K = {strike} (general-strike resummed volatility unavailable)"
            )
        var = nlo.nlo_variance_atm(params)
    elif isinstance(method, Order):
        var = volexp.implied_variance(strike, params, method).total_sq
    else:
        raise ValueError(f"unknown volatility method {method!r}")
    df = math.exp(-params.rate * params.maturity)
    quote = VanillaQuote(
        forward=a_fwd, strike=strike, vol=math.sqrt(var), maturity=params.maturity, df=df, side=side
    )
    return bs_price(quote)


def implied_vol(
    price: float,
    forward: float,
    strike: float,
    maturity: float,
    df: float,
    side: Side = Side.CALL,
) -> float:
    """Invert the Black-Scholes price for the volatility.

    Newton on vega safeguarded by bisection on the bracket [1e-8, 5]; the
    returned vol reproduces ``price`` to 1e-12.  Prices at or outside the
    no-arbitrage bounds raise PriceBoundsError.
    """
    if side is Side.CALL:
        lower = df * max(forward - strike, 0.0)
        upper = df * forward
    else:
        lower = df * max(strike - forward, 0.0)
        upper = df * strike
    if not (lower < price < upper):
        raise PriceBoundsError(
            f"price {price} is outside the open no-arbitrage bounds ({lower}, {upper})"
        )

    def quote(vol: float) -> VanillaQuote:
        return VanillaQuote(forward=forward, strike=strike, vol=vol, maturity=maturity, df=df, side=side)

    def residual(vol: float) -> float:
        return bs_price(quote(vol)) - price

    def dresidual(vol: float) -> float:
        v = bs_vega(quote(vol))
        return v if v > VEGA_FLOOR else 0.0  # zero disables Newton, forcing bisection

    lo, hi = IV_BRACKET
    if residual(hi) < -IV_FTOL:
        raise PriceBoundsError(
            f"price {price} implies a volatility above the supported bracket {IV_BRACKET}"
        )
    if residual(lo) > IV_FTOL:
        raise PriceBoundsError(
            f"price {price} implies a volatility below the supported bracket {IV_BRACKET}"
        )
    return bracketed_root(residual, lo, hi, IV_FTOL, df=dresidual)
