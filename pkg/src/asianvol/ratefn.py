"""Large-deviations rate function for the time average of a geometric Brownian motion.

The rate function J(k) of the average-price ratio k has two closed-form
branches, each defined through a strictly monotone transcendental equation:

    k >= 1:  J = beta^2/2 - beta*tanh(beta/2),   sinh(beta)/beta = k
    k <= 1:  J = 2*xi*(tan(xi) - xi),            sin(2*xi)/(2*xi) = k,  xi in [0, pi/2)

Both branches vanish at k = 1 with a 0/0 cancellation, so a short Taylor
series in log(k) takes over in a narrow window around the money.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

from .errors import DomainError
from .rootfind import bracketed_root

# Absolute residual demanded of the branch-equation roots.
ROOT_FTOL = 1e-12

# |log k| below which the Taylor series replaces the closed form.  At the
# threshold the omitted series term is ~1e-11, below the root tolerance,
# while the closed form starts losing digits to the 0/0 cancellation.
SERIES_SWITCH = 1e-2

# |log k| radius of convergence of the log-strike Taylor series.
SERIES_RADIUS = 3.49295


class Branch(enum.Enum):
    SINH = "sinh"
    SIN = "sin"
    SERIES = "series"


@dataclass(frozen=True)
class RateEval:
    """Rate-function value at one strike ratio, with solver provenance.

    ``residual`` is the absolute residual of the branch equation at the
    returned root (0 for the series branch).
    """

    k: float
    value: float
    branch: Branch
    residual: float


def _sinhc(b: float) -> float:
    # sinh(b)/b, with the removable singularity filled by series below 1e-4
    if abs(b) < 1e-4:
        b2 = b * b
        return 1.0 + b2 / 6.0 * (1.0 + b2 / 20.0)
    return math.sinh(b) / b


def _dsinhc(b: float) -> float:
    if abs(b) < 1e-4:
        return b / 3.0 * (1.0 + b * b / 10.0)
    return math.cosh(b) / b - math.sinh(b) / (b * b)


def _sinc(u: float) -> float:
    # sin(u)/u with series below 1e-4
    if abs(u) < 1e-4:
        u2 = u * u
        return 1.0 - u2 / 6.0 * (1.0 - u2 / 20.0)
    return math.sin(u) / u


def _dsinc(u: float) -> float:
    if abs(u) < 1e-4:
        return -u / 3.0 * (1.0 - u * u / 10.0)
    return math.cos(u) / u - math.sin(u) / (u * u)


def solve_beta(k: float) -> float:
    """Nonnegative root of sinh(beta)/beta = k for k >= 1."""
    if not (isinstance(k, (int, float)) and math.isfinite(k)) or k < 1.0:
        raise DomainError(f"solve_beta requires finite k >= 1, got {k!r}")
    if k == 1.0:
        return 0.0
    # sinh(b) ~ e^b/2, so b = log(2k) + 4 overshoots the root comfortably
    hi = math.log(2.0 * k) + 4.0
    return bracketed_root(lambda b: _sinhc(b) - k, 0.0, hi, ROOT_FTOL, df=_dsinhc)


def solve_xi(k: float) -> float:
    """Root of sin(2 xi)/(2 xi) = k on [0, pi/2) for 0 < k <= 1."""
    if not (isinstance(k, (int, float)) and math.isfinite(k)) or k <= 0.0 or k > 1.0:
        raise DomainError(f"solve_xi requires k in (0, 1], got {k!r}")
    if k == 1.0:
        return 0.0
    hi = math.pi / 2.0 - 1e-15

    def residual(x: float) -> float:
        return _sinc(2.0 * x) - k

    def dresidual(x: float) -> float:
        return 2.0 * _dsinc(2.0 * x)

    return bracketed_root(residual, 0.0, hi, ROOT_FTOL, df=dresidual)


def rate_function_series(logk: float) -> float:
    """Taylor series of the rate function in log(k), truncated at fourth order.

    Emits a warning outside the convergence radius; the closed-form branches
    are authoritative there.
    """
    if abs(logk) >= SERIES_RADIUS:
        warnings.warn(
            f"|log k| = {abs(logk):.4f} is outside the series convergence "
            f"radius {SERIES_RADIUS}; use the closed-form branches",
            RuntimeWarning,
            stacklevel=2,
        )
    return logk * logk * (1.5 + logk * (-0.3 + logk * (109.0 / 1400.0)))


def rate_function(k: float) -> RateEval:
    """Evaluate the rate function at strike ratio k > 0.

    Picks the sinh branch for k > 1, the sin branch for k < 1, and the
    log(k) series in a narrow window around k = 1 where the closed forms
    cancel.  The two branches and the series agree to ~1e-10 at the seams.
    """
    if not (isinstance(k, (int, float)) and math.isfinite(k)) or k <= 0.0:
        raise DomainError(f"rate_function requires finite k > 0, got {k!r}")
    logk = math.log(k)
    if logk == 0.0:
        return RateEval(k=k, value=0.0, branch=Branch.SERIES, residual=0.0)
    if abs(logk) < SERIES_SWITCH:
        return RateEval(k=k, value=rate_function_series(logk), branch=Branch.SERIES, residual=0.0)
    if k > 1.0:
        beta = solve_beta(k)
        value = 0.5 * beta * beta - beta * math.tanh(0.5 * beta)
        return RateEval(k=k, value=value, branch=Branch.SINH, residual=abs(_sinhc(beta) - k))
    xi = solve_xi(k)
    value = 2.0 * xi * (math.tan(xi) - xi)
    return RateEval(k=k, value=value, branch=Branch.SIN, residual=abs(_sinc(2.0 * xi) - k))
