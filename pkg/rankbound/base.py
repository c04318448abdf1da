import typing as t

if t.TYPE_CHECKING:
    from .formula.bound import RankBoundResult

__all__ = (
    "RankBoundError",
    "ParseError",
    "CurveError",
    "SingularModel",
    "EngineError",
    "BadPrimeRouted",
    "InternalAmbiguity",
    "HasseViolation",
    "CacheError",
    "FormulaError",
    "QuadFailure",
    "IncompleteStream",
    "BudgetExceeded",
    "ZerosError",
    "NotAscending",
    "EmptyInput",
    "NegativeSumWarning",
)


class RankBoundError(Exception):
    __slots__ = ()


class ParseError(RankBoundError, ValueError):
    """ Issued on malformed curve literals, table rows and zeros files.
        ``offset`` is a character offset within the parsed text,
        ``line`` a 1-based line number within a file. """

    def __init__(self, message: str, *, offset: t.Optional[int] = None, line: t.Optional[int] = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"offset {offset}")

        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.message = message
        self.offset = offset
        self.line = line


class CurveError(RankBoundError):
    __slots__ = ()


class SingularModel(CurveError):
    """ Issued when the a-invariants define a curve with zero discriminant """


class EngineError(RankBoundError):
    __slots__ = ()


class BadPrimeRouted(EngineError):
    """ Issued when a point-counting routine is handed a prime of bad reduction """


class InternalAmbiguity(EngineError):
    """ Issued when the group-order search fails to isolate a_p; a defect above 229 """


class HasseViolation(EngineError):
    """ Issued when an emitted good-prime trace breaks |a_p| <= 2 sqrt(p) """


class CacheError(EngineError):
    """ Issued on a cache file that belongs to another curve or is truncated """


class FormulaError(RankBoundError):
    __slots__ = ()


class QuadFailure(FormulaError):
    """ Issued when the gamma integral misses its tolerance within the panel budget """


class IncompleteStream(FormulaError):
    """ Issued when an a_p stream stops short of exp(2 pi Delta) """


class BudgetExceeded(FormulaError):
    """ Issued when the Delta schedule runs out of prime-sum budget.
        ``best`` holds the tightest bound reached before that, if any. """

    def __init__(self, message: str, best: t.Optional["RankBoundResult"] = None):
        super().__init__(message)
        self.best = best


class ZerosError(RankBoundError):
    __slots__ = ()


class NotAscending(ZerosError, ValueError):
    def __init__(self, line: int, value: float, previous: float):
        super().__init__(f"Ordinate {value!r} on line {line} does not exceed {previous!r}")
        self.line = line


class EmptyInput(RankBoundError, ValueError):
    __slots__ = ()


class NegativeSumWarning(UserWarning):
    """ Explicit-formula total below zero: numerical error or a zero off the line """
