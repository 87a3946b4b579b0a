"""Exception hierarchy shared by every module."""


class ErasureLabError(Exception):
    """Base class for all library errors."""


class NotPrimePower(ErasureLabError, ValueError):
    pass


class TooLarge(ErasureLabError, ValueError):
    pass


class DivisionByZero(ErasureLabError, ZeroDivisionError):
    pass


class IndexOutOfRange(ErasureLabError, IndexError):
    pass


class DimensionMismatch(ErasureLabError, ValueError):
    pass


class RankDeficient(ErasureLabError, ValueError):
    pass


class BudgetExceeded(ErasureLabError):
    """An exact computation would exceed its enumeration budget.

    ``count`` is the number of objects that would have been enumerated.
    """

    def __init__(self, what: str, count: int, budget: int):
        super().__init__(f"{what}: {count} exceeds budget {budget}")
        self.count = count
        self.budget = budget


class TooLong(ErasureLabError, ValueError):
    pass


class NotDistinct(ErasureLabError, ValueError):
    pass


class DegreeOutOfRange(ErasureLabError, ValueError):
    pass


class PreconditionViolated(ErasureLabError, ValueError):
    pass


class InvalidEpsilon(ErasureLabError, ValueError):
    pass


class DomainError(ErasureLabError, ValueError):
    pass


class NotSquare(ErasureLabError, ValueError):
    pass


class FormatError(ErasureLabError, ValueError):
    """Malformed input file."""
