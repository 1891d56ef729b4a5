"""
Exception hierarchy for the Stirling bound engine
Stirling 界引擎的异常层次

Every error is a ValueError so callers that only guard against bad input keep working.
"""

from typing import Iterable, Optional


class StirlingError(ValueError):
    """Base class for all engine errors"""


class ExactArithmeticError(StirlingError):
    """Division by zero or an identically-zero denominator"""


class ExprSyntaxError(StirlingError):
    """Syntax error in a correction-term expression"""

    def __init__(self, message: str, offset: int, expected: Iterable[str] = ()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at byte {offset}{detail}")


class ExprDomainError(StirlingError):
    """Well-formed expression outside the supported language (e.g. exponent 0)"""


class SeriesError(StirlingError):
    pass


class PrecisionError(StirlingError):
    pass


class UndecidableError(PrecisionError):
    """Interval enclosures still overlap at the precision ceiling"""

    def __init__(self, message: str, n: Optional[int] = None, prec: Optional[int] = None):
        self.n = n
        self.prec = prec
        super().__init__(message)


class SpecError(StirlingError):
    """BoundSpec invariant violation"""


class CertificationError(StirlingError):
    """Failure of one certification stage"""

    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(f"[{stage}] {message}")


class RefutationError(CertificationError):
    """The bound is false: a concrete counterexample n was found"""

    def __init__(self, stage: str, message: str, counterexample: int):
        self.counterexample = counterexample
        super().__init__(stage, f"{message} (counterexample n={counterexample})")


class StageUndecidableError(CertificationError):
    """A certification stage hit the precision ceiling at one n"""

    def __init__(self, stage: str, message: str, n: Optional[int] = None, prec: Optional[int] = None):
        self.n = n
        self.prec = prec
        super().__init__(stage, message)


class ConfigError(StirlingError):
    pass
