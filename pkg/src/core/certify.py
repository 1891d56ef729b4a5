"""
Proof engine for Stirling bounds via the telescoping criterion
基于伸缩判据的 Stirling 界证明引擎

Pipeline for a candidate correction term a(n) and truncation r:

1. derive_difference: D(n) = S_m(n) - (a(n) - a(n+1)) with m = 2r-1 (lower) or 2r (upper),
   after certifying that the denominator of D keeps one sign on the claimed range.
2. eventual_sign_threshold: smallest N* from which the numerator polynomial has the
   required sign at every integer (root bound + exact scan, Sturm cross-check).
3. verify_base_cases: direct interval comparison of n! with the bound on [claim_from, N*).
"""

import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Iterable, List, Optional, Sequence, Tuple

import sympy
from sympy import integer_nthroot

from .certificate import BaseCase, BoundSpec, Certificate, RequiredSign, SignClaim
from .config import DEFAULT_CONFIG, EngineConfig
from .errors import CertificationError, RefutationError, SpecError, StageUndecidableError, UndecidableError
from .exact import Poly, RatFunc
from .precision import Interval, decide, log_stirling_ratio, strict_compare
from .series import partial_sum
from .verdict import Direction, Verdict


def _say(verbose: bool, message: str) -> None:
    if verbose:
        print(message, file=sys.stderr)


# Root bounds and sign scans

def _ceil_root(x: Fraction, k: int) -> int:
    """Smallest integer m >= 0 with m^k >= x (x >= 0)"""
    target = ceil(x)
    root, exact = integer_nthroot(target, k)
    return int(root) if exact else int(root) + 1


def root_upper_bound(p: Poly) -> int:
    """
    Integer B with |z| <= B for every complex root z of p
    多项式根的整数上界

    The smaller of the Cauchy bound 1 + max|a_i / a_d| and the Fujiwara bound
    2 max(|a_{d-i}/a_d|^{1/i}, |a_0 / (2 a_d)|^{1/d}).
    """
    if p.degree < 1:
        return 0
    d, lead = p.degree, abs(p.leading)
    ratios = [abs(c) / lead for c in p.coeffs[:-1]]
    cauchy = 1 + ceil(max(ratios))
    fujiwara_terms = [_ceil_root(abs(p.coeffs[d - i]) / lead, i) for i in range(1, d)]
    fujiwara_terms.append(_ceil_root(abs(p.coeffs[0]) / (2 * lead), d))
    fujiwara = 2 * max(fujiwara_terms)
    return min(cauchy, fujiwara)


def _int_horner(coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def eventual_sign_threshold(claim: SignClaim, scan_from: int = 1, ceiling: int = DEFAULT_CONFIG.threshold_ceiling,
                            strict: bool = False) -> int:
    """
    Minimal N* >= scan_from with sign(p(n)) as required for every integer n >= N*
    求最终符号阈值

    Integers up to the root bound are evaluated exactly; beyond it p has no real
    root and carries the sign of its leading coefficient. With strict=True zero
    values count as failures.
    """
    if scan_from < 1:
        raise ValueError("scan_from must be >= 1")
    p = claim.p.primitive()
    s = claim.required_sign.factor
    if p.is_zero():
        if strict:
            raise CertificationError("threshold", "zero polynomial has no strict sign")
        return scan_from
    if s * p.leading <= 0:
        raise CertificationError(
            "threshold",
            f"bound cannot hold eventually: leading coefficient {p.leading} incompatible with {claim.required_sign.value}",
        )
    bound = root_upper_bound(p)
    stop = max(scan_from, bound)
    if stop - scan_from > ceiling:
        raise CertificationError("threshold", f"threshold search would exceed ceiling of {ceiling} integers (root bound {bound})")
    coeffs = p.int_coeffs()
    last_failure = None
    for n in range(scan_from, stop + 1):
        value = s * _int_horner(coeffs, n)
        if value < 0 or (strict and value == 0):
            last_failure = n
    return scan_from if last_failure is None else last_failure + 1


def sturm_root_count(p: Poly, above: int) -> int:
    """Number of distinct real roots of p in (above, infinity), by a sympy Sturm sequence"""
    if p.is_zero():
        warnings.warn("Sturm cross-check skipped for the zero polynomial", UserWarning, stacklevel=2)
        return 0
    if p.degree < 1:
        return 0
    n = sympy.Symbol("n")
    poly = sympy.Poly([int(c) for c in reversed(p.primitive().int_coeffs())], n)
    linear = sympy.Poly([1, -above], n)
    while poly.degree() >= 1 and poly.eval(above) == 0:
        poly = poly.quo(linear)
    if poly.degree() < 1:
        return 0
    sequence = sympy.sturm(poly)

    def changes(values) -> int:
        signs = [v > 0 for v in values if v != 0]
        return sum(1 for x, y in zip(signs, signs[1:]) if x != y)

    at_point = changes([q.eval(above) for q in sequence])
    at_infinity = changes([q.LC() for q in sequence])
    return at_point - at_infinity


# Spec checks and derivation

def _strictly_positive_from(p: Poly, start: int, ceiling: int) -> bool:
    if p.is_zero() or p.leading < 0:
        return False
    claim = SignClaim(p, RequiredSign.NONNEGATIVE)
    return eventual_sign_threshold(claim, start, ceiling, strict=True) == start


def validate_spec(spec: BoundSpec, config: EngineConfig = DEFAULT_CONFIG) -> None:
    """
    Check the BoundSpec invariants
    检查界规格的不变量

    a(n) -> 0, the denominator of a has no zero at integers >= claim_from, and
    a(n) > 0 for every n >= claim_from.
    """
    if spec.claim_from < 1:
        raise SpecError(f"{spec.name}: claim_from must be >= 1")
    if spec.r is not None and spec.r < 2:
        raise SpecError(f"{spec.name}: truncation parameter r must be >= 2")
    if not spec.a.is_proper():
        raise SpecError(f"{spec.name}: deg(num(a)) must be below deg(den(a)) so that a(n) -> 0")
    if not _strictly_positive_from(spec.a.den, spec.claim_from, config.threshold_ceiling):
        raise SpecError(f"{spec.name}: denominator of a vanishes or changes sign for n >= {spec.claim_from}")
    if not _strictly_positive_from(spec.a.num * spec.a.den, spec.claim_from, config.threshold_ceiling):
        raise SpecError(f"{spec.name}: a(n) is not positive for every n >= {spec.claim_from}")


@dataclass(frozen=True)
class Derivation:
    transcript: RatFunc
    claim: SignClaim
    denominator_sign: int


def derive_difference(spec: BoundSpec, config: EngineConfig = DEFAULT_CONFIG) -> Derivation:
    """
    Form D(n) = S_m(n) - (a(n) - a(n+1)) and the polynomial inequality it implies
    构造单步差分不等式

    Lower bounds need D >= 0 with m = 2r-1; upper bounds need D <= 0 with m = 2r.
    """
    if spec.r is None:
        raise CertificationError("derive", f"{spec.name}: no truncation parameter r")
    series = partial_sum(spec.truncation).to_ratfunc()
    transcript = series - (spec.a - spec.a.shift(1))
    den = transcript.den
    # den has a positive leading coefficient after normalization; certify it stays positive
    if not _strictly_positive_from(den, spec.claim_from, config.threshold_ceiling):
        raise CertificationError("derive", f"denominator {den} is not of constant sign for n >= {spec.claim_from}")
    p = transcript.num.primitive()
    return Derivation(transcript, SignClaim(p, RequiredSign.for_direction(spec.direction)), denominator_sign=1)


# Base cases

def verify_base_cases(spec: BoundSpec, start: int, stop: int, config: EngineConfig = DEFAULT_CONFIG,
                      verbose: bool = False) -> List[BaseCase]:
    """
    Strict interval comparison of n! with the bound for every n in [start, stop)
    直接验证基础情形

    Raises UndecidableError naming n when the ceiling is reached.
    """
    if start < 1:
        raise ValueError("base cases start at n >= 1")

    def one(n: int) -> BaseCase:
        result = strict_compare(n, spec.a, spec.direction, config.prec_ceiling, config.start_prec,
                                config.escalation)
        _say(verbose, f"  base n={n}: {result.verdict.value} at {result.prec} bits")
        return BaseCase(n, result.verdict, result.prec)

    ns = range(start, stop)
    if config.workers > 1 and len(ns) > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            return list(pool.map(one, ns))
    return [one(n) for n in ns]


def find_counterexample(spec: BoundSpec, start: int, limit: int,
                        config: EngineConfig = DEFAULT_CONFIG) -> Optional[int]:
    """First n in [start, start+limit) where the bound is false, or None"""
    for n in range(start, start + limit):
        try:
            result = strict_compare(n, spec.a, spec.direction, config.prec_ceiling, config.start_prec,
                                    config.escalation)
        except UndecidableError:
            continue
        if result.verdict is Verdict.FAILS:
            return n
    return None


def certify_bound(spec: BoundSpec, config: EngineConfig = DEFAULT_CONFIG, verbose: bool = False) -> Certificate:
    """
    Run derivation, threshold search and base-case verification for one bound
    为单个界生成证书

    Errors carry the failing stage; refutations carry a concrete counterexample n.
    """
    _say(verbose, f"certify {spec.name} ({spec.direction.value}, r={spec.r}, n >= {spec.claim_from})")
    try:
        validate_spec(spec, config)
    except SpecError as e:
        raise CertificationError("spec", str(e))
    if spec.r is None:
        raise CertificationError("spec", f"{spec.name}: certification needs a truncation parameter r")

    derivation = derive_difference(spec, config)
    _say(verbose, f"  derive: {derivation.claim.p} {derivation.claim.required_sign.value}")

    try:
        threshold = eventual_sign_threshold(derivation.claim, spec.claim_from, config.threshold_ceiling)
    except CertificationError as e:
        counterexample = find_counterexample(spec, spec.claim_from, config.counterexample_limit, config)
        if counterexample is not None:
            raise RefutationError("threshold", str(e), counterexample)
        raise
    _say(verbose, f"  threshold: N* = {threshold}")

    roots = sturm_root_count(derivation.claim.p, threshold)
    if roots:
        raise CertificationError("cross_check", f"Sturm sequence reports {roots} real root(s) beyond N*={threshold}")

    try:
        base_cases = verify_base_cases(spec, spec.claim_from, threshold, config, verbose)
    except UndecidableError as e:
        raise StageUndecidableError("base_cases", str(e), e.n, e.prec) from e
    for case in base_cases:
        if case.verdict is not Verdict.HOLDS:
            raise RefutationError("base_cases", f"{spec.name} fails its base case", case.n)

    return Certificate(
        spec=spec,
        claim=derivation.claim.with_threshold(threshold),
        base_cases=tuple(base_cases),
        valid_from=spec.claim_from,
        derivation_transcript=derivation.transcript,
        denominator_sign=derivation.denominator_sign,
        roots_beyond_threshold=roots,
    )


# Checks on issued certificates

def replay_certificate(cert: Certificate, config: EngineConfig = DEFAULT_CONFIG) -> bool:
    """Re-derive the sign polynomial and threshold and compare them bit-exactly"""
    derivation = derive_difference(cert.spec, config)
    threshold = eventual_sign_threshold(derivation.claim, cert.spec.claim_from, config.threshold_ceiling)
    return (
        derivation.claim.p == cert.claim.p
        and derivation.claim.required_sign == cert.claim.required_sign
        and threshold == cert.claim.threshold
        and derivation.transcript == cert.derivation_transcript
    )


def soundness_spot_check(cert: Certificate, count: int = 200,
                         config: EngineConfig = DEFAULT_CONFIG) -> List[int]:
    """n in [valid_from, valid_from + count] where interval comparison disagrees with the certificate"""
    disagreements = []
    for n in range(cert.valid_from, cert.valid_from + count + 1):
        result = strict_compare(n, cert.spec.a, cert.spec.direction, config.prec_ceiling, config.start_prec,
                                config.escalation)
        if result.verdict is not Verdict.HOLDS:
            disagreements.append(n)
    return disagreements


def check_direction_duality(lower: RatFunc, upper: RatFunc, ns: Iterable[int]) -> List[int]:
    """n where a_lower(n) < a_upper(n) fails (exact); a non-empty result means a contradictory pair"""
    return [n for n in ns if not lower.evaluate(n) < upper.evaluate(n)]


def ratio_monotone_check(a: Optional[RatFunc], direction: Direction, n_range: Tuple[int, int], prec: int = 64,
                         certificate: Optional[Certificate] = None,
                         prec_ceiling: int = DEFAULT_CONFIG.prec_ceiling) -> Verdict:
    """
    Check that T_n = n! e^n / n^(n+1/2) * e^(-a(n)) is monotone on n_range (inclusive)
    检验比值序列的单调性

    Lower-bound corrections make T_n nonincreasing, upper-bound corrections nondecreasing.
    Each consecutive step is decided by interval arithmetic with doubling precision.
    """
    direction = Direction.parse(direction)
    first, last = n_range
    if first < 1 or last < first:
        raise ValueError(f"invalid range {n_range}")
    if certificate is not None and first < certificate.valid_from:
        raise SpecError(f"range starts below the certified domain n >= {certificate.valid_from}")

    def log_t(n: int, p: int) -> Interval:
        value = log_stirling_ratio(n, p)
        if a is not None:
            value = value - Interval.from_rat(a.evaluate(n), value.prec)
        return value

    for n in range(first, last):
        def step(p: int, n=n) -> Optional[Verdict]:
            diff = log_t(n, p) - log_t(n + 1, p)  # ln T_n - ln T_{n+1}
            if direction is Direction.LOWER:
                if diff.is_positive():
                    return Verdict.HOLDS
                if diff.is_negative():
                    return Verdict.VIOLATED
            else:
                if diff.is_negative():
                    return Verdict.HOLDS
                if diff.is_positive():
                    return Verdict.VIOLATED
            return None

        verdict, _ = decide(step, prec, prec_ceiling, n=n, what="ratio monotonicity")
        if verdict is Verdict.VIOLATED:
            return Verdict.VIOLATED
    return Verdict.HOLDS
