"""
Shared enums for bound directions and check outcomes
界方向与检验结果的共享枚举
"""

from enum import Enum


class Direction(str, Enum):
    """Which side of n! the bound sits on"""
    LOWER = "lower"  # n! >= sqrt(2 pi n)(n/e)^n e^{a_n}
    UPPER = "upper"  # n! <= sqrt(2 pi n)(n/e)^n e^{a_n}

    @classmethod
    def parse(cls, value) -> "Direction":
        if isinstance(value, Direction):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(f"Invalid direction {value!r}: expected 'lower' or 'upper'")


class Verdict(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    VIOLATED = "violated"
    UNDECIDABLE = "undecidable"
