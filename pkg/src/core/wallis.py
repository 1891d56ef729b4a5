"""
Wallis integrals I_n = integral of sin^n over [0, pi/2], kept symbolic as q * pi^k
Wallis 积分的精确表示以及 sqrt(pi n) 夹逼

Only comparisons touch floating point: each reduces to one enclosure of pi
against an exact rational.
"""

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional

from .config import DEFAULT_CONFIG
from .errors import PrecisionError
from .precision import Interval, const_enclosure, decide, factorial, stirling_ratio
from .verdict import Verdict


@dataclass(frozen=True)
class WallisValue:
    """I_n = q * pi^pi_power"""
    q: Fraction
    pi_power: int

    def __post_init__(self):
        if self.pi_power not in (0, 1):
            raise ValueError("pi_power must be 0 or 1")
        if self.q <= 0:
            raise ValueError("Wallis values are positive")

    def enclosure(self, prec: int) -> Interval:
        value = Interval.from_rat(self.q, prec)
        return value * const_enclosure("pi", prec) if self.pi_power else value

    def __str__(self) -> str:
        return f"{self.q}*pi" if self.pi_power else str(self.q)


def wallis_closed_form(n: int) -> WallisValue:
    """
    I_{2m} = (2m)! / (2^{2m} (m!)^2) * pi/2 and I_{2m+1} = 2^{2m} (m!)^2 / (2m+1)!
    Wallis 积分的闭式
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    m = n // 2
    if n % 2 == 0:
        return WallisValue(Fraction(factorial(2 * m), 2 ** (2 * m + 1) * factorial(m) ** 2), 1)
    return WallisValue(Fraction(2 ** (2 * m) * factorial(m) ** 2, factorial(2 * m + 1)), 0)


@lru_cache(maxsize=None)
def _recursive(n: int) -> WallisValue:
    if n == 0:
        return WallisValue(Fraction(1, 2), 1)
    if n == 1:
        return WallisValue(Fraction(1), 0)
    prev = _recursive(n - 2)
    return WallisValue(prev.q * Fraction(n - 1, n), prev.pi_power)


def wallis_integral(n: int) -> WallisValue:
    """
    Exact I_n from I_n = (n-1)/n * I_{n-2}, I_0 = pi/2, I_1 = 1
    由递推式计算 I_n

    The value is checked against the closed form before it is returned.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    # fill the cache bottom-up so the recursion stays one level deep
    for k in range(n % 2, n + 1, 2):
        value = _recursive(k)
    closed = wallis_closed_form(n)
    assert value == closed, f"Wallis recursion disagrees with closed form at n={n}: {value} vs {closed}"
    return value


def central_ratio(n: int) -> Fraction:
    """Exact 2^{2n} (n!)^2 / (2n)!, the middle term of the sandwich"""
    if n < 0:
        raise ValueError("n must be >= 0")
    return Fraction(2 ** (2 * n) * factorial(n) ** 2, factorial(2 * n))


def _pi_vs(q: Fraction, pi_below: bool):
    """Check pi < q (pi_below) or pi > q with escalating precision"""
    def check(prec: int) -> Optional[Verdict]:
        pi = const_enclosure("pi", prec)
        if pi.certainly_lt(q):
            return Verdict.HOLDS if pi_below else Verdict.VIOLATED
        if pi.certainly_gt(q):
            return Verdict.VIOLATED if pi_below else Verdict.HOLDS
        return None
    return check


def wallis_monotone_check(n: int, prec_ceiling: int = DEFAULT_CONFIG.prec_ceiling) -> Verdict:
    """
    Check I_n < I_{n-1}
    检验 I_n < I_{n-1}
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    current, previous = wallis_integral(n), wallis_integral(n - 1)
    if current.pi_power:
        # q_n pi < q_{n-1}
        check = _pi_vs(previous.q / current.q, pi_below=True)
    else:
        # q_n < q_{n-1} pi
        check = _pi_vs(current.q / previous.q, pi_below=False)
    verdict, _ = decide(check, DEFAULT_CONFIG.start_prec, prec_ceiling, n=n, what="Wallis monotonicity")
    return verdict


def wallis_sandwich_check(n: int, prec: int = 64, prec_ceiling: int = DEFAULT_CONFIG.prec_ceiling) -> Verdict:
    """
    Check sqrt(pi n) < 2^{2n}(n!)^2/(2n)! < sqrt(pi (n + 1/2))
    检验 sqrt(pi n) 夹逼不等式

    Both sides are positive, so the check squares them: pi < M^2/n and pi > M^2/(n + 1/2).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    square = central_ratio(n) ** 2
    left = _pi_vs(square / n, pi_below=True)
    right = _pi_vs(square / (n + Fraction(1, 2)), pi_below=False)
    for check in (left, right):
        verdict, _ = decide(check, prec, max(prec, prec_ceiling), n=n, what="Wallis sandwich")
        if verdict is not Verdict.HOLDS:
            return verdict
    return Verdict.HOLDS


def sandwich_gap(n: int, prec: int = 64) -> Interval:
    """Enclosure of sqrt(pi (n + 1/2)) - sqrt(pi n)"""
    if n < 1:
        raise ValueError("n must be >= 1")
    pi = const_enclosure("pi", prec)
    return (pi * Fraction(2 * n + 1, 2)).sqrt() - (pi * n).sqrt()


@dataclass(frozen=True)
class RatioRow:
    """One row of the convergence table for n! e^n / n^(n+1/2)"""
    n: int
    ratio: Interval
    gap: Interval  # ratio - sqrt(2 pi)
    envelope: Verdict

    def to_dict(self, digits: int = 30) -> Dict[str, str]:
        return {
            "n": str(self.n),
            "lo": self.ratio.lo_str(digits),
            "hi": self.ratio.hi_str(digits),
            "gap_to_sqrt2pi": self.gap.to_str(digits),
            "envelope": self.envelope.value,
        }


def _envelope_check(n: int):
    shrink = Fraction(-1, 2 * n)
    grow = 1 + Fraction(1, 2 * n)

    def check(prec: int) -> Optional[Verdict]:
        ratio = stirling_ratio(n, prec)
        root = const_enclosure("sqrt2pi", prec)
        lower = Interval.from_rat(shrink, prec).exp() * root
        upper = Interval.from_rat(grow, prec).sqrt() * root
        if lower.hi_rat <= ratio.lo_rat and ratio.hi_rat <= upper.lo_rat:
            return Verdict.HOLDS
        if ratio.hi_rat < lower.lo_rat or upper.hi_rat < ratio.lo_rat:
            return Verdict.VIOLATED
        return None
    return check


def ratio_limit_table(ns: Iterable[int], prec: int = 128,
                      prec_ceiling: int = DEFAULT_CONFIG.prec_ceiling) -> List[RatioRow]:
    """
    Enclosures of n! e^n / n^(n+1/2) and their distance to sqrt(2 pi)
    Stirling 比值收敛表

    Each row is also checked against e^{-1/(2n)} sqrt(2 pi) <= ratio <= sqrt(1 + 1/(2n)) sqrt(2 pi).
    """
    ns = list(ns)
    if not ns:
        raise ValueError("ratio table needs at least one n")
    rows = []
    for n in ns:
        if n < 1:
            raise ValueError("n must be >= 1")
        envelope, _ = decide(_envelope_check(n), min(prec, prec_ceiling), max(prec, prec_ceiling),
                             n=n, what="ratio envelope")
        if envelope is Verdict.VIOLATED:
            raise PrecisionError(f"ratio at n={n} lies outside its envelope")
        ratio = stirling_ratio(n, prec)
        rows.append(RatioRow(n, ratio, ratio - const_enclosure("sqrt2pi", prec), envelope))
    return rows


def rows_to_csv(rows: Iterable[RatioRow], digits: int = 30) -> str:
    """CSV with columns n, lo, hi, gap_to_sqrt2pi"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["n", "lo", "hi", "gap_to_sqrt2pi"])
    for row in rows:
        data = row.to_dict(digits)
        writer.writerow([data["n"], data["lo"], data["hi"], data["gap_to_sqrt2pi"]])
    return buffer.getvalue()
