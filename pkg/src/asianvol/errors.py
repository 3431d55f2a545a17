"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input is outside the mathematical domain of the operation."""


class UnsupportedStrikeError(DomainError):
    """The requested strike is outside the validity of the chosen approximation."""


class PriceBoundsError(DomainError):
    """A quoted price violates the no-arbitrage bounds required for inversion."""


class ConvergenceError(RuntimeError):
    """An iterative solver exhausted its iteration budget."""


class BudgetError(RuntimeError):
    """A simulation request exceeds the configured resource budget."""
