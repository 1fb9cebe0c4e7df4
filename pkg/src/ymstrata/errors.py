"""Exception types raised across the package."""


class YMStrataError(Exception):
    """Base class for every error raised by this package."""


class DivisionInexact(YMStrataError, ArithmeticError):
    def __init__(self, remainder):
        self.remainder = remainder
        super().__init__(f"not divisible by (1+t): remainder {remainder}")


class InvalidProgression(YMStrataError, ValueError):
    pass


class IncomparableInput(YMStrataError, ValueError):
    pass


class UnsupportedRank(YMStrataError, ValueError):
    pass


class UnsupportedGroup(YMStrataError, ValueError):
    pass


class UnsupportedStratum(YMStrataError, ValueError):
    pass


class NegativeDimension(YMStrataError, ValueError):
    pass


class LedgerInconsistent(YMStrataError, ValueError):
    pass


class MissingTotalSeries(YMStrataError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "missing total series"


class InsufficientBound(YMStrataError, ValueError):
    pass
