"""Exception types raised across the package."""


class FrameletError(Exception):
    """Base class for every error raised by this package."""


# spectral
class NotNonnegative(FrameletError):
    pass


class NoFactorInWindow(FrameletError):
    pass


class DegenerateInput(FrameletError):
    pass


# analysis
class ConditionViolated(FrameletError):
    pass


class WrongArity(FrameletError):
    pass


class MismatchedLowpass(FrameletError):
    pass


class BadOrder(FrameletError):
    pass


# construct
class PreconditionFailed(FrameletError):
    pass


class EmptyNullspace(FrameletError):
    pass


class BadLambda(FrameletError):
    pass


class ZeroDivisor(FrameletError):
    pass


# optimize
class ConstraintViolated(FrameletError):
    pass


class NotTight(FrameletError):
    pass


# render
class BadLowpass(FrameletError):
    pass


class LevelMismatch(FrameletError):
    pass


class IoFailure(FrameletError):
    pass


class NonConvergentWarning(UserWarning):
    """The cascade iteration did not settle; samples are still returned."""


# bank files
class BankSyntaxError(FrameletError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)


class DuplicateFilter(FrameletError):
    pass


class MissingLowpass(FrameletError):
    pass
