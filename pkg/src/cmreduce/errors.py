"""Exception hierarchy shared by all modules.

Every error raised on purpose by this package derives from CMReduceError so
callers can catch one type. DomainError collects the mathematically invalid
inputs (ramified primes, bad reduction, malformed catalogs); these map to a
distinct CLI exit code from resource exhaustion.
"""


class CMReduceError(Exception):
    pass


class DomainError(CMReduceError, ValueError):
    """Input outside the mathematical domain of the operation."""


class NotSquarefreeError(DomainError):
    """Polynomial is not squarefree mod p; p is ramified or an index divisor."""


class RamifiedPrimeError(DomainError):
    """Prime ramifies in the field (divides conductor or discriminant)."""


class MissingDataError(DomainError):
    """Field descriptor lacks the data (conductor, subgroup) the oracle needs."""


class BadReductionError(DomainError):
    """Curve model degenerates mod p (disc = 0 or degree drop)."""

    def __init__(self, p, message=None):
        self.p = p
        detail = f": {message}" if message else ""
        super().__init__(f"bad reduction at p = {p}{detail}")


class CatalogError(DomainError):
    """Catalog file violates the documented schema."""


class ResourceLimitError(CMReduceError):
    """Computation exceeds a configured degree / enumeration / memory cap."""


class PrimeSearchTimeout(CMReduceError):
    """Prime search exhausted its attempt budget or the target is empty."""


class InternalInconsistencyError(CMReduceError):
    """Two routes that must agree did not; indicates a bug, not bad input."""
