"""Equivalent log-normal implied variance of an arithmetic-average Asian option.

The variance is assembled as a short-maturity expansion: a leading term
driven by the large-deviations rate function, plus O(T) corrections grouped
into an at-the-money level shift, a skew term linear in log-moneyness
x = log(K / A_fwd), and a convexity term in x^2:

    Sigma^2 = Sigma0^2 + sigma^2 [ -61/9450 (sigma^2 T) + 1/12 (r-q)T ]
            + sigma^2 [ -34/23625 (sigma^2 T) ] x
            + sigma^2 [ 12073/16632000 (sigma^2 T) - 5/2016 (r-q)T ] x^2

All rational coefficients are carried as exact fractions and derive from a
single generating bracket in the reduced parameterization, so the module
exposes both the physical-parameter assembly above and the equivalent
reduced-form path (they agree to floating-point rounding).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .params import MarketParams
from .ratefn import SERIES_SWITCH, rate_function


class Order(enum.Enum):
    """Truncation order of the variance expansion."""

    LEADING = "lead"
    ATM_CORRECTION = "atm"
    LINEAR = "lin"
    QUADRATIC = "quad"

    @property
    def rank(self) -> int:
        return _ORDER_RANK[self]


_ORDER_RANK = {Order.LEADING: 0, Order.ATM_CORRECTION: 1, Order.LINEAR: 2, Order.QUADRATIC: 3}

DEFAULT_ORDER = Order.LINEAR


@dataclass(frozen=True)
class VolExpansion:
    """Assembled implied variance with its individual contributions.

    ``level``, ``skew`` and ``convexity`` are the O(T) contributions actually
    added (zero when the order truncates them away), so
    ``total_sq == sigma0_sq + level + skew + convexity`` always holds.
    """

    x: float
    sigma0_sq: float
    level: float
    skew: float
    convexity: float
    total_sq: float


@dataclass(frozen=True)
class SubleadingCoeffs:
    """Exact reduced-variance O(tau) coefficients and their generators c1..c4."""

    c1: Fraction
    c2: Fraction
    c3: Fraction
    c4: Fraction
    level: Fraction
    skew: Fraction
    convexity: Fraction


def forward_price(params: MarketParams) -> float:
    """Forward price of the average, S0 * (e^{(r-q)T} - 1) / ((r-q)T)."""
    rho = params.drift * params.maturity
    if abs(rho) < 1e-6:
        growth = 1.0 + rho * (0.5 + rho / 6.0)
    else:
        growth = math.expm1(rho) / rho
    return params.spot * growth


def log_moneyness(strike: float, a_fwd: float) -> float:
    """log(K / A_fwd); zero exactly when the strike sits on the forward."""
    if not (strike > 0.0 and math.isfinite(strike)):
        raise DomainError(f"strike must be positive and finite, got {strike!r}")
    if not (a_fwd > 0.0 and math.isfinite(a_fwd)):
        raise DomainError(f"forward must be positive and finite, got {a_fwd!r}")
    return math.log(strike / a_fwd)


def sigma0_sq(k_eff: float, sigma: float) -> float:
    """Leading implied variance sigma^2 log^2(k) / (2 J(k)) at strike ratio k_eff.

    The ratio has a removable singularity at k_eff = 1 (value sigma^2/3); a
    short series in log(k_eff) bridges the window where the closed form
    cancels, switching at the same threshold as the rate function so the two
    stay consistent.
    """
    if not (k_eff > 0.0 and math.isfinite(k_eff)):
        raise DomainError(f"strike ratio must be positive and finite, got {k_eff!r}")
    sig2 = sigma * sigma
    logk = math.log(k_eff)
    if abs(logk) < SERIES_SWITCH:
        series = 1.0 + logk * (0.2 + logk * (-1.0 / 84.0 + logk * (-17.0 / 10500.0)))
        return sig2 / 3.0 * series
    return sig2 * logk * logk / (2.0 * rate_function(k_eff).value)


def c_coeffs(mu: float) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Exact expansion coefficients c1..c4 of the density amplitude, linear in mu + 1."""
    if not math.isfinite(mu):
        raise DomainError("mu must be finite")
    m1 = Fraction(mu) + 1
    c1 = Fraction(3, 4) * m1 - Fraction(4, 5)
    c2 = -Fraction(3, 80) * m1 + Fraction(57, 1400)
    c3 = Fraction(1, 350) * m1 - Fraction(1, 875)
    c4 = Fraction(11, 22400) * m1 + Fraction(3281, 6160000)
    return c1, c2, c3, c4


def reduced_subleading_coeffs(mu: float) -> SubleadingCoeffs:
    """O(tau) level/skew/convexity of the reduced variance, from the c_i bracket.

    Everything is exact rational arithmetic; floats enter only when a caller
    converts the result.
    """
    c1, c2, c3, c4 = c_coeffs(mu)
    m1 = Fraction(mu) + 1
    level = Fraction(4, 4725) * (1051 + 1680 * c1 + 4200 * c2 - 315 * m1)
    skew = Fraction(8, 23625) * (-91 + 170 * c1 + 4200 * c2 + 10500 * c3)
    convexity = Fraction(1, 18191250) * (
        -250193 - 517440 * c1 + 1047200 * c2 + 25872000 * c3 + 64680000 * c4 - 39270 * m1
    )
    return SubleadingCoeffs(c1=c1, c2=c2, c3=c3, c4=c4, level=level, skew=skew, convexity=convexity)


def b_coeffs(mu: float, shifted: bool = False) -> tuple[Fraction, Fraction]:
    """Log-price bracket coefficients (b1, b2); ``shifted`` moves log-strike to log-moneyness.

    The shift cancels b1 identically, which is what removes the 1/x
    singularity of the subleading variance.
    """
    if not math.isfinite(mu):
        raise DomainError("mu must be finite")
    m1 = Fraction(mu) + 1
    if shifted:
        return Fraction(0), Fraction(61, 1050) - Fraction(3, 8) * m1
    return -Fraction(3, 2) * m1, Fraction(61, 1050) + Fraction(3, 40) * m1


def _physical_constants() -> tuple[float, float, float, float, float]:
    """Rescale the reduced O(tau) coefficients to physical (sigma^2 T, (r-q)T) units.

    Reduced -> physical carries a factor sigma^2/4 for the variance and
    tau = sigma^2 T/4, mu + 1 = 2(r-q)/sigma^2, i.e. a factor 1/16 on the
    sigma^4 T pieces and 1/8 per unit of (mu+1) slope.
    """
    at_m1 = reduced_subleading_coeffs(-1.0)
    slope_level = reduced_subleading_coeffs(0.0).level - at_m1.level
    slope_conv = reduced_subleading_coeffs(0.0).convexity - at_m1.convexity
    return (
        float(at_m1.level / 16),        # * sigma^2 * (sigma^2 T):      -61/9450
        float(slope_level / 8),         # * sigma^2 * (r-q)T:            1/12
        float(at_m1.skew / 16),         # * sigma^2 * (sigma^2 T) * x:  -34/23625
        float(at_m1.convexity / 16),    # * sigma^2 * (sigma^2 T) * x^2: 12073/16632000
        float(slope_conv / 8),          # * sigma^2 * (r-q)T * x^2:     -5/2016
    )


_LEVEL_S2T, _LEVEL_RT, _SKEW_S2T, _CONV_S2T, _CONV_RT = _physical_constants()


def implied_variance(strike: float, params: MarketParams, order: Order = DEFAULT_ORDER) -> VolExpansion:
    """Equivalent log-normal implied variance of the Asian option at ``strike``.

    The leading order evaluates the rate-function ratio at the spot strike
    ratio K/S0 (forward and spot moneyness coincide as T -> 0).  From
    ATM_CORRECTION upward the leading term switches to the forward moneyness
    x = log(K/A_fwd), in which variable the O(T) corrections are finite at
    the money.

    Raises DomainError if the truncated expansion turns nonpositive, which
    only happens far outside its validity.
    """
    a_fwd = forward_price(params)
    x = log_moneyness(strike, a_fwd)
    sig2 = params.sigma * params.sigma
    s2t = sig2 * params.maturity
    rt = params.drift * params.maturity

    if order is Order.LEADING:
        lead = sigma0_sq(strike / params.spot, params.sigma)
        level = skew = convexity = 0.0
    else:
        lead = sigma0_sq(math.exp(x), params.sigma)
        level = sig2 * (_LEVEL_S2T * s2t + _LEVEL_RT * rt)
        skew = sig2 * (_SKEW_S2T * s2t) * x if order.rank >= 2 else 0.0
        convexity = sig2 * (_CONV_S2T * s2t + _CONV_RT * rt) * x * x if order.rank >= 3 else 0.0

    total = lead + level + skew + convexity
    if not total > 0.0:
        raise DomainError(
            f"assembled implied variance {total} is not positive at strike {strike}; "
            "the expansion is outside its validity"
        )
    return VolExpansion(x=x, sigma0_sq=lead, level=level, skew=skew, convexity=convexity, total_sq=total)


def implied_variance_reduced(strike: float, params: MarketParams, order: Order = DEFAULT_ORDER) -> float:
    """Same variance through the reduced parameterization (sigma^2/4 times the
    normalized-problem variance at tau = sigma^2 T/4, mu = 2(r-q)/sigma^2 - 1).

    Kept as an independent evaluation path; it must agree with
    ``implied_variance`` to ~1e-14 relative.
    """
    red = params.reduced()
    a_fwd = forward_price(params)
    x = log_moneyness(strike, a_fwd)
    if order is Order.LEADING:
        # normalized problem has volatility 2
        return 0.25 * params.sigma ** 2 * sigma0_sq(strike / params.spot, 2.0)
    coeffs = reduced_subleading_coeffs(red.mu)
    bracket = float(coeffs.level)
    if order.rank >= 2:
        bracket += float(coeffs.skew) * x
    if order.rank >= 3:
        bracket += float(coeffs.convexity) * x * x
    reduced_var = sigma0_sq(math.exp(x), 2.0) + bracket * red.tau
    return 0.25 * params.sigma ** 2 * reduced_var
