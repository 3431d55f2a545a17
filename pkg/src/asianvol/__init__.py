"""Arithmetic-average Asian option pricing via short-maturity volatility expansions.

The equivalent log-normal volatility of an Asian option is built from the
large-deviations rate function of the average-price ratio plus O(T)
corrections (level, skew, convexity), optionally with the accumulated-rate
contributions resummed at the money.  Prices follow by plugging that
volatility into the Black-Scholes formula on the forward average, and an
independent Monte Carlo pricer cross-checks the result.
"""

from .bspricer import NLO, Side, VanillaQuote, asian_price, bs_price, implied_vol, norm_cdf
from .errors import (
    BudgetError,
    ConvergenceError,
    DomainError,
    PriceBoundsError,
    UnsupportedStrikeError,
)
from .laplace import LaplaceSpec, leading_term
from .mcoracle import McConfig, McResult, mc_asian_price, mc_average_mean
from .nlo import RhoParams, nlo_variance_atm, sigma_ln_rho_atm, v_of_rho
from .params import MarketParams, ReducedParams
from .ratefn import Branch, RateEval, rate_function, rate_function_series, solve_beta, solve_xi
from .volexp import (
    Order,
    SubleadingCoeffs,
    VolExpansion,
    b_coeffs,
    c_coeffs,
    forward_price,
    implied_variance,
    implied_variance_reduced,
    log_moneyness,
    reduced_subleading_coeffs,
    sigma0_sq,
)

__version__ = "0.1.0"

__all__ = [
    "Branch",
    "BudgetError",
    "ConvergenceError",
    "DomainError",
    "LaplaceSpec",
    "MarketParams",
    "McConfig",
    "McResult",
    "NLO",
    "Order",
    "PriceBoundsError",
    "RateEval",
    "ReducedParams",
    "RhoParams",
    "Side",
    "SubleadingCoeffs",
    "UnsupportedStrikeError",
    "VanillaQuote",
    "VolExpansion",
    "asian_price",
    "b_coeffs",
    "bs_price",
    "c_coeffs",
    "forward_price",
    "implied_variance",
    "implied_variance_reduced",
    "implied_vol",
    "leading_term",
    "log_moneyness",
    "mc_asian_price",
    "mc_average_mean",
    "nlo_variance_atm",
    "norm_cdf",
    "rate_function",
    "rate_function_series",
    "reduced_subleading_coeffs",
    "sigma0_sq",
    "sigma_ln_rho_atm",
    "solve_beta",
    "solve_xi",
    "v_of_rho",
]
