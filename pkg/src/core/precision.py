"""
Adaptive-precision interval arithmetic with outward rounding
带外向舍入的自适应精度区间算术

Intervals are built on the pure functions of mpmath.libmp (each takes an explicit
precision and rounding direction), so no global context or rounding-mode state is
touched. Transcendental results (log, exp, pi, e) are additionally widened by a few
units in the last place before they are used, so the enclosure never relies on the
last-bit accuracy of the underlying series.

Comparisons of transcendental quantities are decided only when enclosures are
disjoint; otherwise precision is doubled up to a ceiling.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial as _exact_factorial
from typing import Callable, Optional, Tuple, Union

from mpmath.libmp import (
    fzero,
    from_int,
    from_man_exp,
    from_rational,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_e,
    mpf_exp,
    mpf_log,
    mpf_mul,
    mpf_neg,
    mpf_pi,
    mpf_sqrt,
    mpf_sub,
    round_ceiling,
    round_floor,
    to_str,
)

from .errors import ExactArithmeticError, PrecisionError, UndecidableError
from .exact import RatFunc
from .verdict import Direction, Verdict

MIN_PREC = 16
DEFAULT_START_PREC = 64
DEFAULT_PREC_CEILING = 16384

Number = Union[int, Fraction, "Interval"]


def _mag(x) -> int:
    """Exponent e with |x| < 2^e (x nonzero)"""
    return x[2] + x[3]


def _ulps(x, prec: int, k: int = 2):
    """k units of the last place of x at prec bits (absolute 2^-prec for zero)"""
    if x == fzero:
        return from_man_exp(1, -prec)
    return from_man_exp(1, _mag(x) - prec + k)


def mpf_to_fraction(x) -> Fraction:
    """Exact value of a finite mpf tuple"""
    sign, man, exp, _ = x
    if man == 0:
        if x != fzero:
            raise PrecisionError("non-finite interval endpoint")
        return Fraction(0)
    value = man << exp if exp >= 0 else Fraction(man, 1 << -exp)
    return -Fraction(value) if sign else Fraction(value)


def _cmp_rat(x, q: Fraction) -> int:
    """Sign of (x - q) for an mpf x and an exact rational q"""
    d = mpf_to_fraction(x) - q
    return (d > 0) - (d < 0)


@dataclass(frozen=True)
class Interval:
    """
    Closed interval [lo, hi] of binary floating values at working precision prec
    工作精度为 prec 的闭区间

    Every operation returns an interval containing the exact mathematical result.
    """
    lo: tuple
    hi: tuple
    prec: int

    def __post_init__(self):
        if mpf_cmp(self.lo, self.hi) > 0:
            raise PrecisionError("interval with lo > hi")

    # Construction

    @classmethod
    def from_rat(cls, q: Union[int, Fraction], prec: int) -> "Interval":
        q = Fraction(q)
        return cls(
            from_rational(q.numerator, q.denominator, prec, round_floor),
            from_rational(q.numerator, q.denominator, prec, round_ceiling),
            prec,
        )

    @classmethod
    def from_int(cls, k: int, prec: int) -> "Interval":
        return cls(from_int(k, prec, round_floor), from_int(k, prec, round_ceiling), prec)

    def _coerce(self, other: Number) -> "Interval":
        if isinstance(other, Interval):
            return other
        return Interval.from_rat(other, self.prec)

    # Queries

    @property
    def lo_rat(self) -> Fraction:
        return mpf_to_fraction(self.lo)

    @property
    def hi_rat(self) -> Fraction:
        return mpf_to_fraction(self.hi)

    def width(self) -> Fraction:
        return self.hi_rat - self.lo_rat

    def contains(self, q: Union[int, Fraction]) -> bool:
        q = Fraction(q)
        return _cmp_rat(self.lo, q) <= 0 <= _cmp_rat(self.hi, q)

    def contains_interval(self, other: "Interval") -> bool:
        return mpf_cmp(self.lo, other.lo) <= 0 and mpf_cmp(other.hi, self.hi) <= 0

    def is_positive(self) -> bool:
        return mpf_cmp(self.lo, fzero) > 0

    def is_negative(self) -> bool:
        return mpf_cmp(self.hi, fzero) < 0

    def certainly_lt(self, other: Number) -> bool:
        other = self._coerce(other)
        return mpf_cmp(self.hi, other.lo) < 0

    def certainly_gt(self, other: Number) -> bool:
        other = self._coerce(other)
        return mpf_cmp(self.lo, other.hi) > 0

    def ge_rat(self, q: Fraction) -> Optional[bool]:
        """True if every point is >= q, False if every point is < q, else None"""
        if _cmp_rat(self.lo, q) >= 0:
            return True
        if _cmp_rat(self.hi, q) < 0:
            return False
        return None

    def le_rat(self, q: Fraction) -> Optional[bool]:
        if _cmp_rat(self.hi, q) <= 0:
            return True
        if _cmp_rat(self.lo, q) > 0:
            return False
        return None

    # Arithmetic

    def __neg__(self) -> "Interval":
        return Interval(mpf_neg(self.hi), mpf_neg(self.lo), self.prec)

    def __add__(self, other: Number) -> "Interval":
        other = self._coerce(other)
        p = max(self.prec, other.prec)
        return Interval(mpf_add(self.lo, other.lo, p, round_floor), mpf_add(self.hi, other.hi, p, round_ceiling), p)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "Interval":
        other = self._coerce(other)
        p = max(self.prec, other.prec)
        return Interval(mpf_sub(self.lo, other.hi, p, round_floor), mpf_sub(self.hi, other.lo, p, round_ceiling), p)

    def __rsub__(self, other: Number) -> "Interval":
        return self._coerce(other) - self

    def __mul__(self, other: Number) -> "Interval":
        other = self._coerce(other)
        p = max(self.prec, other.prec)
        pairs = [(a, b) for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        lows = [mpf_mul(a, b, p, round_floor) for a, b in pairs]
        highs = [mpf_mul(a, b, p, round_ceiling) for a, b in pairs]
        return Interval(_min(lows), _max(highs), p)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "Interval":
        other = self._coerce(other)
        if not (other.is_positive() or other.is_negative()):
            raise ExactArithmeticError("interval division by an interval containing zero")
        p = max(self.prec, other.prec)
        pairs = [(a, b) for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        lows = [mpf_div(a, b, p, round_floor) for a, b in pairs]
        highs = [mpf_div(a, b, p, round_ceiling) for a, b in pairs]
        return Interval(_min(lows), _max(highs), p)

    def __rtruediv__(self, other: Number) -> "Interval":
        return self._coerce(other) / self

    def __pow__(self, k: int) -> "Interval":
        if k < 0:
            return 1 / (self ** -k)
        result = Interval.from_int(1, self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base.square()
            k >>= 1
        return result

    def square(self) -> "Interval":
        if self.is_negative():
            return (-self).square()
        if self.is_positive() or self.lo == fzero:
            return self * self
        m = _max([mpf_neg(self.lo), self.hi])
        return Interval(fzero, mpf_mul(m, m, self.prec, round_ceiling), self.prec)

    def half(self) -> "Interval":
        return self * Fraction(1, 2)

    # Elementary functions

    def log(self) -> "Interval":
        if not self.is_positive():
            raise PrecisionError("logarithm of an interval not bounded away from zero")
        p = self.prec
        lo = mpf_log(self.lo, p, round_floor)
        hi = mpf_log(self.hi, p, round_ceiling)
        return _widened(lo, hi, p)

    def exp(self) -> "Interval":
        p = self.prec
        lo = mpf_exp(self.lo, p, round_floor)
        hi = mpf_exp(self.hi, p, round_ceiling)
        lo = _max([fzero, mpf_sub(lo, _ulps(lo, p), p, round_floor)])
        return Interval(lo, mpf_add(hi, _ulps(hi, p), p, round_ceiling), p)

    def sqrt(self) -> "Interval":
        if mpf_cmp(self.lo, fzero) < 0:
            raise PrecisionError("square root of an interval with negative part")
        p = self.prec
        return Interval(mpf_sqrt(self.lo, p, round_floor), mpf_sqrt(self.hi, p, round_ceiling), p)

    # Output

    def lo_str(self, digits: int = 30) -> str:
        return to_str(self.lo, digits)

    def hi_str(self, digits: int = 30) -> str:
        return to_str(self.hi, digits)

    def to_str(self, digits: int = 30) -> str:
        return f"[{to_str(self.lo, digits)}, {to_str(self.hi, digits)}]"

    def __str__(self) -> str:
        return self.to_str(20)


def _min(values):
    best = values[0]
    for v in values[1:]:
        if mpf_cmp(v, best) < 0:
            best = v
    return best


def _max(values):
    best = values[0]
    for v in values[1:]:
        if mpf_cmp(v, best) > 0:
            best = v
    return best


def _widened(lo, hi, prec: int) -> Interval:
    return Interval(mpf_sub(lo, _ulps(lo, prec), prec, round_floor), mpf_add(hi, _ulps(hi, prec), prec, round_ceiling), prec)


# Constants and the factorial oracle

@lru_cache(maxsize=64)
def factorial(n: int) -> int:
    """Exact n! (n up to at least 10^6)"""
    if n < 0:
        raise ValueError("factorial of a negative integer")
    return _exact_factorial(n)


def _pi(prec: int) -> Interval:
    return _widened(mpf_pi(prec, round_floor), mpf_pi(prec, round_ceiling), prec)


def _e(prec: int) -> Interval:
    return _widened(mpf_e(prec, round_floor), mpf_e(prec, round_ceiling), prec)


def const_enclosure(which: str, prec: int) -> Interval:
    """
    Enclosure of pi, e or sqrt(2 pi) of width at most 2^(2-prec)
    常数的区间包络

    Args:
        which: 'pi', 'e' or 'sqrt2pi' (also accepts 'π', '√(2π)')
        prec: requested precision in bits (>= 16)
    """
    if prec < MIN_PREC:
        raise PrecisionError(f"precision must be >= {MIN_PREC} bits")
    work = prec + 10
    key = which.strip().lower()
    if key in ("pi", "π"):
        value = _pi(work)
    elif key == "e":
        value = _e(work)
    elif key in ("sqrt2pi", "sqrt(2pi)", "√(2π)", "√2π"):
        value = (_pi(work) * 2).sqrt()
    else:
        raise ValueError(f"Unknown constant: {which!r}")
    return Interval(value.lo, value.hi, prec)


def log_factorial(n: int, prec: int) -> Interval:
    """Enclosure of ln(n!) from the exact integer rounded outward to prec bits"""
    return Interval.from_int(factorial(n), prec).log()


def _rat_at(a: RatFunc, n: int, prec: int) -> Interval:
    try:
        value = a.evaluate(n)
    except ExactArithmeticError:
        raise PrecisionError(f"correction term has a pole at n={n}")
    return Interval.from_rat(value, prec)


def eval_log_bound(n: int, a: Optional[RatFunc], prec: int) -> Interval:
    """
    Enclosure of ln( sqrt(2 pi n) (n/e)^n e^{a(n)} ) = ln(2 pi n)/2 + n ln n - n + a(n)
    界的对数包络
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    ln_n = Interval.from_int(n, prec).log()
    result = (_pi(prec) * (2 * n)).log().half() + ln_n * n - n
    if a is not None:
        result = result + _rat_at(a, n, prec)
    return result


def bound_enclosure(n: int, a: Optional[RatFunc], prec: int) -> Interval:
    """Enclosure of the bound value itself"""
    return eval_log_bound(n, a, prec).exp()


def decide(check: Callable[[int], Optional[Verdict]], start_prec: int = DEFAULT_START_PREC,
           prec_ceiling: int = DEFAULT_PREC_CEILING, escalation: int = 2,
           n: Optional[int] = None, what: str = "comparison") -> Tuple[Verdict, int]:
    """
    Run check(prec) with doubling precision until it returns a verdict
    逐步加倍精度直到得出结论

    Returns (verdict, deciding precision); raises UndecidableError at the ceiling.
    """
    prec = start_prec
    while True:
        verdict = check(prec)
        if verdict is not None:
            return verdict, prec
        if prec >= prec_ceiling:
            where = f" at n={n}" if n is not None else ""
            raise UndecidableError(f"{what}{where} undecidable at {prec_ceiling} bits", n=n, prec=prec_ceiling)
        prec = min(prec * escalation, prec_ceiling)


@dataclass(frozen=True)
class CompareResult:
    n: int
    verdict: Verdict
    prec: int


def strict_compare(n: int, a: Optional[RatFunc], direction: Direction,
                   prec_ceiling: int = DEFAULT_PREC_CEILING,
                   start_prec: int = DEFAULT_START_PREC, escalation: int = 2) -> CompareResult:
    """
    Decide n! > bound (lower) or n! < bound (upper) strictly
    严格比较 n! 与界

    Both sides are compared in log space; precision grows by `escalation` from start_prec until the
    enclosures of ln(n!) and the log-bound are disjoint.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    direction = Direction.parse(direction)

    def check(prec: int) -> Optional[Verdict]:
        lhs = log_factorial(n, prec)
        rhs = eval_log_bound(n, a, prec)
        if lhs.certainly_gt(rhs):
            return Verdict.HOLDS if direction is Direction.LOWER else Verdict.FAILS
        if lhs.certainly_lt(rhs):
            return Verdict.HOLDS if direction is Direction.UPPER else Verdict.FAILS
        return None

    verdict, prec = decide(check, start_prec, prec_ceiling, escalation, n=n,
                           what=f"{direction.value} bound comparison")
    return CompareResult(n, verdict, prec)


def log_stirling_ratio(n: int, prec: int) -> Interval:
    """Enclosure of ln( n! e^n / n^(n+1/2) )"""
    work = prec + n.bit_length() + 8
    ln_n = Interval.from_int(n, work).log()
    value = log_factorial(n, work) + n - ln_n * (Fraction(2 * n + 1, 2))
    return Interval(value.lo, value.hi, work)


def stirling_ratio(n: int, prec: int) -> Interval:
    """
    Enclosure of n! e^n / n^(n+1/2), which tends to sqrt(2 pi)
    Stirling 比值的包络
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return log_stirling_ratio(n, prec).exp()


def _sci(x, dps: int) -> str:
    # always scientific notation, trailing zeros kept
    return to_str(x, dps, strip_zeros=False, min_fixed=1, max_fixed=0)


def leading_digits_agreement(a: Interval, b: Interval, digits: int) -> int:
    """Number of leading significant decimal digits shared by a.lo and b.hi (at most digits)"""
    sa, sb = _sci(a.lo, digits + 5), _sci(b.hi, digits + 5)
    mant_a, _, exp_a = sa.partition("e")
    mant_b, _, exp_b = sb.partition("e")
    if exp_a != exp_b or mant_a[:1] == "-" or mant_b[:1] == "-":
        return 0
    da, db = mant_a.replace(".", ""), mant_b.replace(".", "")
    count = 0
    for x, y in zip(da, db):
        if x != y:
            break
        count += 1
    return min(count, digits)
