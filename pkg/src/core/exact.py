"""
Exact arithmetic kernel: rationals, dense polynomials and rational functions in n
精确算术内核：有理数、稠密多项式以及关于 n 的有理函数

No binary floating point exists anywhere in this module. Rationals are
fractions.Fraction (always canonical: den > 0, gcd = 1, zero is 0/1).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb, gcd, lcm
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

from .errors import ExactArithmeticError

Rat = Fraction
Scalar = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_rat(value: Union[Scalar, str]) -> Fraction:
    """Convert an int, Fraction or terminating-decimal string to an exact rational"""
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    return Fraction(value)


def rat_arith(a: Scalar, b: Scalar, op: str) -> Fraction:
    """
    Exact rational arithmetic with canonical results
    精确有理数运算

    Args:
        a, b: operands
        op: one of '+', '-', '*' (or '×'), '/' (or '÷')
    """
    a, b = as_rat(a), as_rat(b)
    if op == "+":
        return a + b
    if op in ("-", "−"):
        return a - b
    if op in ("*", "×"):
        return a * b
    if op in ("/", "÷"):
        if b == 0:
            raise ExactArithmeticError(f"division of {a} by zero")
        return a / b
    raise ValueError(f"Unknown rational operation: {op!r}")


def _trim(coeffs: Iterable[Scalar]) -> Tuple[Fraction, ...]:
    out = [as_rat(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Poly:
    """
    Dense univariate polynomial; coeffs[i] is the coefficient of n^i
    稠密单变量多项式

    The zero polynomial has an empty coefficient tuple.
    """
    coeffs: Tuple[Fraction, ...] = ()

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    # Construction

    @classmethod
    def constant(cls, c: Scalar) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, c: Scalar, k: int) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def var(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def from_descending(cls, coeffs: Sequence[Scalar]) -> "Poly":
        """Build from the highest-degree coefficient first, as polynomials are typeset"""
        return cls(list(reversed(list(coeffs))))

    # Queries

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial"""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __call__(self, x: Scalar) -> Fraction:
        return poly_eval_exact(self, x)

    # Arithmetic

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __add__(self, other: Union["Poly", Scalar]) -> "Poly":
        other = _as_poly(other)
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (_ZERO,) * (size - len(self.coeffs))
        b = other.coeffs + (_ZERO,) * (size - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other: Union["Poly", Scalar]) -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other: Scalar) -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other: Union["Poly", Scalar]) -> "Poly":
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative polynomial power")
        result = Poly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Scalar) -> "Poly":
        c = as_rat(c)
        return Poly(c * x for x in self.coeffs)

    def shift(self, k: int = 1) -> "Poly":
        """Return q with q(x) = p(x + k)"""
        return poly_shift(self, k)

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def content(self) -> Fraction:
        """Positive rational c such that p / c is a primitive integer polynomial"""
        if self.is_zero():
            return _ZERO
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        num = reduce(gcd, (abs(c.numerator) * (den // c.denominator) for c in self.coeffs), 0)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """Integer polynomial with content 1 and the same sign pattern"""
        if self.is_zero():
            return self
        return self.scale(1 / self.content())

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading)

    def int_coeffs(self) -> Tuple[int, ...]:
        if not self.is_integral():
            raise ValueError("polynomial has non-integer coefficients")
        return tuple(c.numerator for c in self.coeffs)

    def to_text(self, var: str = "n") -> str:
        """Typeset-style rendering, highest degree first: '-3600n^7 - 1687578n^5 + ...'"""
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            mag_text = str(mag) if mag.denominator == 1 else f"({mag})"
            if k == 0:
                body = mag_text
            else:
                power = var if k == 1 else f"{var}^{k}"
                body = power if mag == 1 else f"{mag_text}{power}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_text()


def _as_poly(value: Union[Poly, Scalar]) -> Poly:
    return value if isinstance(value, Poly) else Poly.constant(value)


def poly_eval_exact(p: Poly, x: Scalar) -> Fraction:
    """Exact Horner evaluation p(x)"""
    x = as_rat(x)
    acc = _ZERO
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_shift(p: Poly, k: int = 1) -> Poly:
    """
    Taylor shift q(x) = p(x + k); degree is preserved
    多项式平移

    With k = 1 this is the substitution n -> n+1 used to form a(n+1).
    """
    if p.is_zero() or k == 0:
        return p
    d = p.degree
    out = [_ZERO] * (d + 1)
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        # (x + k)^i = sum_j C(i, j) k^(i-j) x^j
        for j in range(i + 1):
            out[j] += c * comb(i, j) * k ** (i - j)
    return Poly(out)


def poly_divmod(p: Poly, q: Poly) -> Tuple[Poly, Poly]:
    """Euclidean division over the rationals"""
    if q.is_zero():
        raise ExactArithmeticError("polynomial division by zero")
    rem = list(p.coeffs)
    quot = [_ZERO] * max(0, len(rem) - len(q.coeffs) + 1)
    lead = q.leading
    dq = q.degree
    for k in range(len(rem) - 1, dq - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        factor = c / lead
        quot[k - dq] = factor
        for j, qc in enumerate(q.coeffs):
            rem[k - dq + j] -= factor * qc
    return Poly(quot), Poly(rem[:dq] if dq > 0 else [])


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (content removed at each step)"""
    a, b = p.primitive(), q.primitive()
    while not b.is_zero():
        _, r = poly_divmod(a, b)
        a, b = b, r.primitive()
    return a.monic()


def ratio_to_scalar(p: Poly, q: Poly) -> Optional[Fraction]:
    """Return lambda with p = lambda * q, or None when the polynomials are not proportional"""
    if p.is_zero() or q.is_zero():
        return None
    if p.degree != q.degree:
        return None
    lam = p.leading / q.leading
    return lam if q.scale(lam) == p else None


@dataclass(frozen=True)
class RatFunc:
    """
    Normalized rational function num/den in n
    规范化有理函数

    Invariants: den nonzero with positive leading coefficient, gcd(num, den) = 1,
    and the representation is made unique by taking den primitive over the integers.
    """
    num: Poly
    den: Poly

    def __init__(self, num: Union[Poly, Scalar], den: Union[Poly, Scalar] = 1):
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise ExactArithmeticError("rational function with identically-zero denominator")
        if num.is_zero():
            num, den = Poly(), Poly([1])
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, _ = poly_divmod(num, g)
                den, _ = poly_divmod(den, g)
            # den primitive integer with positive leading coefficient
            scale = den.content()
            if den.leading < 0:
                scale = -scale
            num, den = num.scale(1 / scale), den.scale(1 / scale)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p, 1)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_proper(self) -> bool:
        """deg(num) < deg(den), i.e. f(n) -> 0 as n -> infinity"""
        return self.num.degree < self.den.degree

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __add__(self, other: Union["RatFunc", Scalar]) -> "RatFunc":
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other: Union["RatFunc", Scalar]) -> "RatFunc":
        return self + (-_as_ratfunc(other))

    def __rsub__(self, other: Scalar) -> "RatFunc":
        return _as_ratfunc(other) - self

    def __mul__(self, other: Union["RatFunc", Scalar]) -> "RatFunc":
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["RatFunc", Scalar]) -> "RatFunc":
        other = _as_ratfunc(other)
        if other.is_zero():
            raise ExactArithmeticError("division by an identically-zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: Scalar) -> "RatFunc":
        return _as_ratfunc(other) / self

    def __pow__(self, k: int) -> "RatFunc":
        return RatFunc(self.num ** k, self.den ** k)

    def shift(self, k: int = 1) -> "RatFunc":
        """f(n + k)"""
        return RatFunc(poly_shift(self.num, k), poly_shift(self.den, k))

    def evaluate(self, x: Scalar) -> Fraction:
        d = poly_eval_exact(self.den, x)
        if d == 0:
            raise ExactArithmeticError(f"pole of {self} at n={x}")
        return poly_eval_exact(self.num, x) / d

    __call__ = evaluate

    def to_text(self) -> str:
        if self.den == Poly([1]):
            return self.num.to_text()
        return f"({self.num.to_text()})/({self.den.to_text()})"

    def __str__(self) -> str:
        return self.to_text()


def _as_ratfunc(value: Union[RatFunc, Poly, Scalar]) -> RatFunc:
    if isinstance(value, RatFunc):
        return value
    return RatFunc(_as_poly(value), 1)


def ratfunc_arith(f: RatFunc, g: RatFunc, op: str) -> RatFunc:
    """
    Exact normalized +, -, x of rational functions
    有理函数的精确运算
    """
    if op == "+":
        return f + g
    if op in ("-", "−"):
        return f - g
    if op in ("*", "×"):
        return f * g
    if op in ("/", "÷"):
        return f / g
    raise ValueError(f"Unknown rational-function operation: {op!r}")


def rat_to_json(x: Fraction) -> str:
    """Decimal string for an exact rational ('3', '-53/75600')"""
    return str(x)


def poly_to_json(p: Poly) -> list:
    return [str(c) for c in p.coeffs]


def poly_from_json(data: Sequence[str]) -> Poly:
    return Poly(Fraction(c) for c in data)


def ratfunc_to_json(f: RatFunc) -> Dict[str, list]:
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def ratfunc_from_json(data: Dict[str, Sequence[str]]) -> RatFunc:
    return RatFunc(poly_from_json(data["num"]), poly_from_json(data["den"]))
