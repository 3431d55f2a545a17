"""Rate-resummed at-the-money volatility and the next-to-leading-order estimate.

The subleading expansion treats (r-q)T as small.  At the money that
restriction can be lifted: the accumulated-rate corrections resum into

    Sigma_ATM = sigma * rho/(e^rho - 1) * sqrt(v(rho)),   rho = (r-q)T,
    v(rho) = (rho e^{2 rho} - 3/2 e^{2 rho} + 2 e^rho - 1/2) / rho^3,

and the NLO estimate subtracts the separately-known O(sigma^2 T) level term
on top.  Only the ATM point is available in closed form; pricing paths guard
against strikes where the flat resummed value would silently misprice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .params import MarketParams

# |rho| sanity bound: beyond this the e^{2 rho} growth leaves any practical
# rates regime and the expansion pieces are not meaningful together.
RHO_BOUND = 5.0

# Switch to the Taylor series of v below this |rho|.  The closed form
# cancels three leading orders (terms of size ~2 collapse to rho^3/3), so
# near the origin it cannot hold 1e-12; the series carries enough exact
# rational terms to be at full double precision everywhere below the switch.
V_SERIES_SWITCH = 0.25
_V_SERIES_TERMS = 16


def _v_series_coeffs(n: int) -> list[float]:
    # coefficient of rho^j in v: numerator terms of (rho - 3/2) e^{2 rho} + 2 e^rho - 1/2
    coeffs = []
    for j in range(n):
        m = j + 3
        c = (
            Fraction(2 ** (m - 1), math.factorial(m - 1))
            - Fraction(3, 2) * Fraction(2 ** m, math.factorial(m))
            + Fraction(2, math.factorial(m))
        )
        coeffs.append(float(c))
    return coeffs


_V_COEFFS = _v_series_coeffs(_V_SERIES_TERMS)


@dataclass(frozen=True)
class RhoParams:
    """Accumulated-rate coordinates used by the resummed ATM formulas."""

    rho: float
    sigma: float
    maturity: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.rho) and abs(self.rho) < RHO_BOUND):
            raise DomainError(f"|rho| must be finite and < {RHO_BOUND}, got {self.rho!r}")
        if not (self.sigma > 0.0 and math.isfinite(self.sigma)):
            raise DomainError(f"sigma must be positive and finite, got {self.sigma!r}")
        if not (self.maturity > 0.0 and math.isfinite(self.maturity)):
            raise DomainError(f"maturity must be positive and finite, got {self.maturity!r}")

    @classmethod
    def from_market(cls, params: MarketParams) -> "RhoParams":
        return cls(rho=params.drift * params.maturity, sigma=params.sigma, maturity=params.maturity)


def v_of_rho(rho: float) -> float:
    """Variance shape factor v(rho); v(0) = 1/3."""
    if not (math.isfinite(rho) and abs(rho) < RHO_BOUND):
        raise DomainError(f"|rho| must be finite and < {RHO_BOUND}, got {rho!r}")
    if abs(rho) < V_SERIES_SWITCH:
        acc = 0.0
        for c in reversed(_V_COEFFS):
            acc = acc * rho + c
        return acc
    # expm1 rearrangement keeps the three-order cancellation mild
    e1 = math.expm1(rho)
    num = (rho - e1) + e1 * (2.0 * rho - 1.5 * e1) + rho * e1 * e1
    return num / (rho * rho * rho)


def _spot_over_forward(rho: float) -> float:
    # rho / (e^rho - 1), the spot-to-forward ratio of the average
    if abs(rho) < 1e-6:
        return 1.0 - 0.5 * rho + rho * rho / 12.0
    return rho / math.expm1(rho)


def sigma_ln_rho_atm(sigma: float, rho: float) -> float:
    """Resummed at-the-money equivalent log-normal volatility.

    Exact in (r-q)T at the strike K = A_fwd; its square expands as
    sigma^2 (1/3 + rho/12 + rho^2/180 + ...).
    """
    if not (sigma > 0.0 and math.isfinite(sigma)):
        raise DomainError(f"sigma must be positive and finite, got {sigma!r}")
    v = v_of_rho(rho)
    if v <= 0.0:
        raise DomainError(f"v(rho) = {v} is not positive at rho = {rho}")
    return sigma * _spot_over_forward(rho) * math.sqrt(v)


def nlo_variance_atm(params: MarketParams) -> float:
    """NLO at-the-money implied variance: resummed rate effects plus the
    O(sigma^2 T) level correction (the skew term vanishes at the money)."""
    rp = RhoParams.from_market(params)
    sig2 = params.sigma * params.sigma
    atm = sigma_ln_rho_atm(params.sigma, rp.rho)
    total = atm * atm - sig2 * (61.0 / 9450.0) * sig2 * params.maturity
    if not total > 0.0:
        raise DomainError(f"NLO variance {total} is not positive; inputs outside validity")
    return total
