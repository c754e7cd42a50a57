"""Ошибки вычислительного ядра.

Имя класса совпадает с кодом ошибки, который видят пользователи API и CLI.
"""


class AlgebraError(Exception):
    """Базовая ошибка предметной области"""

    def __init__(self, message: str = "", witness=None):
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__
        self.witness = witness

    @property
    def code(self) -> str:
        return self.__class__.__name__


# laurent
class VariableCountMismatch(AlgebraError):
    pass


class NotDivisible(AlgebraError):
    pass


class DivisionByZero(AlgebraError):
    pass


class ZeroCoordinate(AlgebraError):
    pass


class ParseError(AlgebraError):
    pass


# cluster
class IndexOutOfRange(AlgebraError):
    pass


class LaurentViolation(AlgebraError):
    pass


class ZeroEntry(AlgebraError):
    pass


class BudgetExceeded(AlgebraError):
    pass


class InvalidSeed(AlgebraError):
    pass


# bratteli
class RankMismatch(AlgebraError):
    pass


class InconsistentQuotient(AlgebraError):
    pass


class UnknownFormat(AlgebraError):
    pass


# k0
class LevelOutOfRange(AlgebraError):
    pass


class NotPrimitive(AlgebraError):
    pass


class InvalidFactor(AlgebraError):
    pass


class NotComparable(AlgebraError):
    pass


# annulus
class BoundExceeded(AlgebraError):
    pass


class InvalidParameters(AlgebraError):
    pass


class DiscriminantNegative(AlgebraError):
    pass


# jones
class StrandMismatch(AlgebraError):
    pass


class TooManyCrossings(AlgebraError):
    pass


class RelationViolated(AlgebraError):
    pass
