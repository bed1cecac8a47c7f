"""Exception types raised across the package."""


class LucasConvError(Exception):
    """Base class for all package errors."""


class DegenerateParams(LucasConvError, ValueError):
    """Raised when p**2 == 4*q or U_k == 0, so the closed forms have a zero denominator."""


class ZeroUk(DegenerateParams):
    """Raised when U_k(p, q) == 0."""


class ZeroQ(LucasConvError, ValueError):
    """Raised when q == 0 and a division by q**k is required."""


class SeriesOrderError(LucasConvError, ValueError):
    """Raised when a coefficient beyond a series' truncation order is requested."""


class BudgetExceeded(LucasConvError, RuntimeError):
    """Raised when brute-force enumeration would exceed its term budget."""
