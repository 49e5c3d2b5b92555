"""Exception types raised across the package."""


class PermidentError(Exception):
    """Base class for all library errors."""


class SizeGuard(PermidentError):
    """Requested size exceeds a guard chosen to keep runs tractable."""

    def __init__(self, what: str, value: int, limit: int):
        self.what = what
        self.value = value
        self.limit = limit
        super().__init__(f"size guard '{what}': {value} exceeds limit {limit}")

    def __reduce__(self):
        return (SizeGuard, (self.what, self.value, self.limit))


class DomainError(PermidentError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class FieldMismatch(PermidentError, TypeError):
    """Cyclotomic operands belong to fields of different order."""


class DuplicatePoints(PermidentError, ValueError):
    """Two evaluation points coincide, so some x_j - x_k vanishes."""


class NonField(PermidentError, TypeError):
    """Division-based algorithm invoked over a ring that is not a field."""


class DegenerateDenominator(PermidentError, ZeroDivisionError):
    """1 - zeta^d vanished while building a cyclotomic matrix."""


class InternalInconsistency(PermidentError, AssertionError):
    """Two independent computation paths disagreed."""


class NonPrime(PermidentError, ValueError):
    """A prime modulus was required."""
