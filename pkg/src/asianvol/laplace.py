"""Leading-order Laplace-method evaluation of endpoint-dominated integrals.

For I(lambda) = int_a^b e^{-lambda f(x)} g(x) dx with
f(x) = f(a) + a0 (x-a)^alpha + ... and g(x) = b0 (x-a)^{beta-1} + ...,
the leading asymptotic term as lambda -> infinity is

    I(lambda) ~ e^{-lambda f(a)} Gamma(beta/alpha) d0 lambda^{-beta/alpha},
    d0 = b0 / (alpha a0^{beta/alpha}).

Only the leading term is implemented: the higher coefficients require
derivative data of f and g that the intended applications do not supply.
The alpha = 1, beta = 2 case is what turns a rate-function exponent into the
tau^{3/2} prefactor of the short-maturity option price.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class LaplaceSpec:
    """Local data of the integrand at the dominating endpoint."""

    f_at_a: float
    a0: float
    b0: float
    alpha: float
    beta: float
    lam: float

    def __post_init__(self) -> None:
        if not (self.a0 > 0.0 and math.isfinite(self.a0)):
            raise DomainError(f"a0 must be positive and finite, got {self.a0!r}")
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise DomainError(f"alpha must be positive and finite, got {self.alpha!r}")
        if not (self.beta > 0.0 and math.isfinite(self.beta)):
            raise DomainError(f"beta must be positive and finite, got {self.beta!r}")
        if not (self.lam > 0.0 and math.isfinite(self.lam)):
            raise DomainError(f"lambda must be positive and finite, got {self.lam!r}")
        if not math.isfinite(self.f_at_a) or not math.isfinite(self.b0):
            raise DomainError("f_at_a and b0 must be finite")


def leading_term(spec: LaplaceSpec) -> float:
    """Leading asymptotic value of the integral; relative error is O(lambda^{-1/alpha})."""
    ratio = spec.beta / spec.alpha
    d0 = spec.b0 / (spec.alpha * spec.a0**ratio)
    return math.exp(-spec.lam * spec.f_at_a) * math.gamma(ratio) * d0 * spec.lam**-ratio
