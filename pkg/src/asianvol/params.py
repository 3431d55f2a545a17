"""Market and reduced parameter records."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class MarketParams:
    """Black-Scholes pricing inputs for one Asian option problem.

    ``r`` and ``q`` are continuously compounded; ``sigma`` is the lognormal
    volatility of the underlying.
    """

    spot: float
    rate: float
    sigma: float
    maturity: float
    dividend: float = 0.0

    def __post_init__(self) -> None:
        if not (self.spot > 0.0 and math.isfinite(self.spot)):
            raise DomainError(f"spot must be positive and finite, got {self.spot!r}")
        if not (self.sigma > 0.0 and math.isfinite(self.sigma)):
            raise DomainError(f"sigma must be positive and finite, got {self.sigma!r}")
        if not (self.maturity > 0.0 and math.isfinite(self.maturity)):
            raise DomainError(f"maturity must be positive and finite, got {self.maturity!r}")
        if not (math.isfinite(self.rate) and math.isfinite(self.dividend)):
            raise DomainError("rate and dividend must be finite")

    @property
    def drift(self) -> float:
        """Effective drift r - q; every volatility formula depends on r only through this."""
        return self.rate - self.dividend

    def reduced(self) -> "ReducedParams":
        return ReducedParams.from_market(self)


@dataclass(frozen=True)
class ReducedParams:
    """Standardized coordinates (tau, mu) of the canonical gBM time-average.

    tau = sigma^2 T / 4 and mu = 2(r - q)/sigma^2 - 1 map any Black-Scholes
    setup onto the normalized problem with volatility 2 and unit spot.
    """

    tau: float
    mu: float
    k: float = 1.0

    def __post_init__(self) -> None:
        if not (self.tau > 0.0 and math.isfinite(self.tau)):
            raise DomainError(f"tau must be positive and finite, got {self.tau!r}")
        if not math.isfinite(self.mu):
            raise DomainError("mu must be finite")
        if not (self.k > 0.0 and math.isfinite(self.k)):
            raise DomainError(f"k must be positive and finite, got {self.k!r}")

    @classmethod
    def from_market(cls, params: MarketParams, strike: float | None = None) -> "ReducedParams":
        k = strike / params.spot if strike is not None else 1.0
        sig2 = params.sigma * params.sigma
        return cls(tau=0.25 * sig2 * params.maturity, mu=2.0 * params.drift / sig2 - 1.0, k=k)

    def to_market(self, spot: float = 1.0, sigma: float = 2.0) -> MarketParams:
        """Invert the standardization at a chosen (spot, sigma); exact round trip."""
        sig2 = sigma * sigma
        return MarketParams(
            spot=spot,
            rate=0.5 * sig2 * (self.mu + 1.0),
            sigma=sigma,
            maturity=4.0 * self.tau / sig2,
        )
