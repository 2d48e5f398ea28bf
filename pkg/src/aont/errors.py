"""Exception hierarchy shared by all modules."""


class AontError(Exception):
    """Base class for every error raised by this package."""


class DataError(AontError, ValueError):
    """Bad input data (CLI exit code 2)."""


class ParseError(DataError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SingularMatrix(DataError):
    pass


class IndexOutOfRange(DataError, IndexError):
    pass


class BothZero(DataError):
    pass


class NotInvertible(DataError):
    pass


class FieldMismatch(DataError):
    pass


class DivisionByZero(DataError, ZeroDivisionError):
    pass


class NotPrime(DataError):
    pass


class BadResidueClass(DataError):
    pass


class BadT(DataError):
    pass


class BadRow(DataError):
    pass


class RhoOutOfRange(DataError):
    pass


class STooSmall(DataError):
    pass


class NotBalanced(DataError):
    def __init__(self, message, pair=None):
        self.pair = pair
        super().__init__(message)


class UnequalBlockSizes(DataError):
    pass


class NotSymmetric(DataError):
    pass


class ParityViolation(DataError):
    pass


class NotDistinct(DataError):
    pass


class FieldTooSmall(DataError):
    pass


class BadForm(DataError):
    pass


class MTooSmall(DataError):
    pass


class NonIntegerResult(AontError, ArithmeticError):
    pass


class NoInvertibleFound(AontError, RuntimeError):
    pass


class WordOverflow(DataError):
    pass


class NotBijective(DataError):
    pass


class BadShape(DataError):
    pass
