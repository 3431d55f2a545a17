"""Bracketed scalar root finding: bisection with a safeguarded Newton refinement.

Every transcendental equation in this package has a strictly monotone
residual, so a sign-change bracket is available up front and bisection is
unconditionally convergent.  Newton steps are taken only while they stay
inside the current bracket; anything else falls back to bisection.
"""

from __future__ import annotations

from typing import Callable, Optional

from .errors import ConvergenceError

MAX_ITER = 200


def bracketed_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    ftol: float,
    df: Optional[Callable[[float], float]] = None,
    max_iter: int = MAX_ITER,
) -> float:
    """Find x in [lo, hi] with |f(x)| <= ftol, given f(lo) and f(hi) of opposite sign.

    Convergence is declared on the residual, not on the bracket width, so the
    returned value carries a guaranteed residual bound.  Raises
    ConvergenceError after ``max_iter`` iterations.
    """
    flo = f(lo)
    if abs(flo) <= ftol:
        return lo
    fhi = f(hi)
    if abs(fhi) <= ftol:
        return hi
    if flo * fhi > 0.0:
        raise ValueError(f"root not bracketed on [{lo}, {hi}]: f ends {flo}, {fhi}")

    x, fx = (lo, flo) if abs(flo) < abs(fhi) else (hi, fhi)
    for _ in range(max_iter):
        step_taken = False
        if df is not None:
            d = df(x)
            if d != 0.0:
                x_new = x - fx / d
                if lo < x_new < hi:
                    x, step_taken = x_new, True
        if not step_taken:
            x = 0.5 * (lo + hi)
        fx = f(x)
        if abs(fx) <= ftol:
            return x
        if (fx < 0.0) == (flo < 0.0):
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
    raise ConvergenceError(
        f"no root with residual <= {ftol} after {max_iter} iterations "
        f"(last residual {fx})"
    )
