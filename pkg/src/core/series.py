"""
The Stirling series (n + 1/2) ln(1 + 1/n) - 1 = sum_{k>=2} (-1)^k (k-1) / (2k(k+1)) n^-k
Stirling 级数：系数、部分和以及修正项族的渐近匹配

Odd truncations underestimate and even truncations overestimate the series
(alternating terms of decreasing magnitude); that envelope turns the transcendental
single-step inequality into a polynomial one.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Dict, Iterable, List, Mapping, Tuple, Union

from .errors import SeriesError
from .exact import Poly, RatFunc
from .expr import parse_ratfunc, substitute_constant
from .precision import Interval
from .verdict import Verdict

DEFAULT_SERIES_ORDER = 16


def stirling_coeff(k: int) -> Fraction:
    """(-1)^k (k-1) / (2k(k+1)), the coefficient of n^-k"""
    if k < 2:
        raise SeriesError(f"series coefficients start at k=2, got k={k}")
    return Fraction((-1) ** k * (k - 1), 2 * k * (k + 1))


@dataclass(frozen=True)
class LaurentSum:
    """
    Finite sum of c_k / n^k with k >= 2 and nonzero stored coefficients
    有限 Laurent 和
    """
    terms: Tuple[Tuple[int, Fraction], ...] = field(default_factory=tuple)

    def __post_init__(self):
        for k, c in self.terms:
            if k < 2 or c == 0:
                raise SeriesError(f"invalid Laurent term {c}/n^{k}")

    @classmethod
    def from_mapping(cls, terms: Mapping[int, Fraction]) -> "LaurentSum":
        return cls(tuple(sorted((k, Fraction(c)) for k, c in terms.items() if c != 0)))

    def as_dict(self) -> Dict[int, Fraction]:
        return dict(self.terms)

    def __getitem__(self, k: int) -> Fraction:
        return self.as_dict().get(k, Fraction(0))

    @property
    def order(self) -> int:
        return max((k for k, _ in self.terms), default=0)

    def to_ratfunc(self) -> RatFunc:
        """Combine over the common denominator n^m"""
        m = self.order
        if m == 0:
            return RatFunc(0)
        num = Poly([self[m - j] for j in range(m + 1)])
        return RatFunc(num, Poly.monomial(1, m))

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        return sum((c / x**k for k, c in self.terms), Fraction(0))


def partial_sum(m: int) -> LaurentSum:
    """S_m(n) = sum_{k=2}^{m} stirling_coeff(k) / n^k"""
    if m < 2:
        raise SeriesError(f"partial sums need m >= 2, got {m}")
    return LaurentSum.from_mapping({k: stirling_coeff(k) for k in range(2, m + 1)})


def f_enclosure(n: int, prec: int) -> Interval:
    """Enclosure of f(n) = (n + 1/2) ln(1 + 1/n) - 1"""
    if n < 1:
        raise ValueError("n must be >= 1")
    ln_ratio = Interval.from_rat(Fraction(n + 1, n), prec).log()
    return ln_ratio * Fraction(2 * n + 1, 2) - 1


def envelope_check(n: int, r: int, prec: int = 128) -> Verdict:
    """
    Check S_{2r-1}(n) <= f(n) <= S_{2r}(n) at one precision
    检验交错包络性质

    Returns HOLDS, VIOLATED, or UNDECIDABLE when the enclosure of f(n) is too wide.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if r < 2:
        raise SeriesError("envelope truncation needs r >= 2")
    value = f_enclosure(n, prec)
    low = partial_sum(2 * r - 1).evaluate(n)
    high = partial_sum(2 * r).evaluate(n)
    above = value.ge_rat(low)
    below = value.le_rat(high)
    if above is False or below is False:
        return Verdict.VIOLATED
    if above and below:
        return Verdict.HOLDS
    return Verdict.UNDECIDABLE


def verify_envelope(ns: Iterable[int], rs: Iterable[int], prec: int = 256) -> List[Tuple[int, int, Verdict]]:
    """Batch envelope check; returns every (n, r, verdict) that did not hold"""
    rs = list(rs)
    failures = []
    for n in ns:
        for r in rs:
            verdict = envelope_check(n, r, prec)
            if verdict is not Verdict.HOLDS:
                failures.append((n, r, verdict))
    return failures


def laurent_expand(f: RatFunc, order: int = DEFAULT_SERIES_ORDER) -> Dict[int, Fraction]:
    """
    Expansion of a proper rational function in powers of 1/n up to n^-order
    真有理函数按 1/n 的幂展开

    With t = 1/n, f = t^(dd - dn) * rev(num)(t) / rev(den)(t); the quotient is taken
    by exact power-series long division.
    """
    if f.is_zero():
        return {}
    if not f.is_proper():
        raise SeriesError("only proper rational functions have an expansion in 1/n")
    dn, dd = f.num.degree, f.den.degree
    shift = dd - dn
    num = list(reversed(f.num.coeffs))
    den = list(reversed(f.den.coeffs))
    length = order - shift + 1
    if length <= 0:
        return {}
    num += [Fraction(0)] * max(0, length - len(num))
    quot: List[Fraction] = []
    for j in range(length):
        acc = num[j] - sum((den[i] * quot[j - i] for i in range(1, min(j, len(den) - 1) + 1)), Fraction(0))
        quot.append(acc / den[0])
    return {shift + j: c for j, c in enumerate(quot) if c != 0}


def correction_coefficients(order: int = DEFAULT_SERIES_ORDER) -> Dict[int, Fraction]:
    """
    Coefficients lambda_k of the exact correction a_n = sum lambda_k / n^k
    精确修正项的渐近系数

    Solved from a_n - a_{n+1} = sum_k stirling_coeff(k) / n^k using
    1/n^i - 1/(n+1)^i = sum_{k>i} (-1)^(k-i+1) C(k-1, i-1) / n^k.
    """
    lam: Dict[int, Fraction] = {}
    for k in range(2, order + 2):
        acc = stirling_coeff(k)
        for i in range(1, k - 1):
            acc -= (-1) ** (k - i + 1) * comb(k - 1, i - 1) * lam[i]
        lam[k - 1] = acc / (k - 1)
    return lam


Family = Union[str, Callable[[Fraction], RatFunc]]


def _family_fn(family: Family) -> Callable[[Fraction], RatFunc]:
    if callable(family):
        return family
    return lambda c: parse_ratfunc(substitute_constant(family, c))


def optimal_tail_constant(family: Family, target_order: int, order: int = DEFAULT_SERIES_ORDER) -> Fraction:
    """
    Constant c* making the family's expansion agree with the true correction through target_order
    求使修正项族与真实展开匹配的常数

    Args:
        family: template with one unknown constant c, either a callable c -> RatFunc or
            an expression containing the symbol c (e.g. "1/(12n)-1/(360n^3+c*n)")
        target_order: the power of 1/n at which c first enters
    """
    if target_order > order:
        raise SeriesError(f"target order {target_order} exceeds expansion order {order}")
    fn = _family_fn(family)
    expansions = [laurent_expand(fn(Fraction(c)), target_order) for c in (0, 1, 2)]
    for k in range(1, target_order):
        if expansions[0].get(k, 0) != expansions[1].get(k, 0):
            raise SeriesError(f"family depends on c already at order {k} < {target_order}")
    e0, e1, e2 = (e.get(target_order, Fraction(0)) for e in expansions)
    slope = e1 - e0
    if slope == 0:
        raise SeriesError(f"family does not depend on c at order {target_order}")
    if e2 - e1 != slope:
        raise SeriesError(f"family depends nonlinearly on c at order {target_order}")
    target = correction_coefficients(target_order).get(target_order, Fraction(0))
    return (target - e0) / slope
