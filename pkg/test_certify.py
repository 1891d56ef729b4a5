#!/usr/bin/env python3
"""
Tests for the proof engine: root bounds, eventual signs, derivation and certificates
证明引擎测试：根界、最终符号、推导与证书
"""

import json
from dataclasses import replace
from fractions import Fraction

import pytest

import src.core.certify as certify_module
from src.core.certificate import BoundSpec, Certificate, RequiredSign, SignClaim
from src.core.config import EngineConfig
from src.core.certify import (
    certify_bound,
    check_direction_duality,
    derive_difference,
    eventual_sign_threshold,
    find_counterexample,
    ratio_monotone_check,
    replay_certificate,
    root_upper_bound,
    soundness_spot_check,
    sturm_root_count,
    validate_spec,
)
from src.core.errors import CertificationError, RefutationError, SpecError, StageUndecidableError, UndecidableError
from src.core.exact import Poly
from src.core.expr import parse_ratfunc
from src.core.verdict import Direction, Verdict

C103_PRINTED = Poly.from_descending([-3600, 0, -1687578, 30717978, 58917996, 49497870, 16976975, 11683805])
C102_PRINTED = Poly.from_descending([600, 0, -46338, 46338, -782124, -1506090, -1253245, -429471, -293216])


def spec(a_text, direction, r=None, claim_from=1, name=None):
    return BoundSpec(name or a_text, Direction(direction), parse_ratfunc(a_text), r, claim_from, a_text)


def proportional(p, q):
    lead = p.leading / q.leading
    return lead > 0 and q.scale(lead) == p


@pytest.fixture(scope="module")
def c103_certificate():
    return certify_bound(spec("1/(12n)-1/(360n^3+103n)", "upper", r=4, name="c103_upper"))


class TestRootBounds:
    def test_bounds_roots(self):
        p = Poly.from_descending([1, 0, -4])
        assert 2 <= root_upper_bound(p) <= 5

    def test_constant_polynomial(self):
        assert root_upper_bound(Poly([3])) == 0

    def test_sturm_counts_roots_above(self):
        p = Poly.from_descending([1, 0, -4])
        assert sturm_root_count(p, 0) == 1
        assert sturm_root_count(p, 2) == 0
        assert sturm_root_count(Poly.from_descending([1, -6, 11, -6]), 0) == 3

    def test_sturm_zero_polynomial_warns(self):
        with pytest.warns(UserWarning):
            assert sturm_root_count(Poly(), 0) == 0


class TestEventualSign:
    def test_linear(self):
        claim = SignClaim(Poly.from_descending([1, -10]), RequiredSign.NONNEGATIVE)
        assert eventual_sign_threshold(claim) == 10
        assert eventual_sign_threshold(claim, strict=True) == 11

    def test_scan_start(self):
        claim = SignClaim(Poly.from_descending([1, -10]), RequiredSign.NONNEGATIVE)
        assert eventual_sign_threshold(claim, scan_from=20) == 20

    def test_nonpositive(self):
        claim = SignClaim(Poly.from_descending([-1, 0, 50]), RequiredSign.NONPOSITIVE)
        assert eventual_sign_threshold(claim) == 8

    @pytest.mark.parametrize("factor", [Fraction(1, 3), 7, 10**6])
    def test_positive_scaling_keeps_threshold(self, factor):
        for printed, sign, expected in ((C103_PRINTED, RequiredSign.NONPOSITIVE, 15),
                                        (C102_PRINTED, RequiredSign.NONNEGATIVE, 10)):
            assert eventual_sign_threshold(SignClaim(printed.scale(factor), sign)) == expected

    def test_wrong_leading_sign(self):
        claim = SignClaim(Poly.from_descending([-1, 5]), RequiredSign.NONNEGATIVE)
        with pytest.raises(CertificationError) as info:
            eventual_sign_threshold(claim)
        assert info.value.stage == "threshold"

    def test_ceiling(self):
        claim = SignClaim(Poly.from_descending([1, -10**7]), RequiredSign.NONNEGATIVE)
        with pytest.raises(CertificationError):
            eventual_sign_threshold(claim, ceiling=1000)


class TestSpecValidation:
    def test_improper_correction(self):
        with pytest.raises(SpecError):
            validate_spec(spec("n/(n+1)", "upper", r=2))

    def test_pole_in_range(self):
        with pytest.raises(SpecError):
            validate_spec(spec("1/(n-3)", "upper", r=2))

    def test_negative_correction(self):
        with pytest.raises(SpecError):
            validate_spec(spec("-1/(12n)", "upper", r=2))

    def test_certify_reports_spec_stage(self):
        with pytest.raises(CertificationError) as info:
            certify_bound(spec("1/(n-3)", "upper", r=2))
        assert info.value.stage == "spec"


class TestDerivation:
    def test_103_family_polynomial(self):
        derivation = derive_difference(spec("1/(12n)-1/(360n^3+103n)", "upper", r=4))
        assert derivation.claim.required_sign is RequiredSign.NONPOSITIVE
        assert proportional(C103_PRINTED, derivation.claim.p)
        assert eventual_sign_threshold(derivation.claim) == 15

    def test_102_family_polynomial(self):
        derivation = derive_difference(spec("1/(12n)-1/(360n^3+102n)", "lower", r=5, claim_from=8))
        assert derivation.claim.required_sign is RequiredSign.NONNEGATIVE
        assert proportional(C102_PRINTED, derivation.claim.p)
        assert eventual_sign_threshold(derivation.claim) == 10

    def test_transcript_is_the_difference(self):
        s = spec("1/(12n+1)", "lower", r=2)
        derivation = derive_difference(s)
        n = 5
        series = Fraction(1, 12 * n**2) - Fraction(1, 12 * n**3)
        assert derivation.transcript.evaluate(n) == series - (s.a.evaluate(n) - s.a.evaluate(n + 1))
        assert derivation.denominator_sign == 1

    def test_missing_truncation(self):
        with pytest.raises(CertificationError):
            derive_difference(spec("1/(12n)", "upper"))


class TestCertification:
    def test_103_family(self, c103_certificate):
        cert = c103_certificate
        assert cert.threshold == 15
        assert cert.valid_from == 1
        assert [b.n for b in cert.base_cases] == list(range(1, 15))
        assert all(b.verdict is Verdict.HOLDS for b in cert.base_cases)
        assert cert.roots_beyond_threshold == 0

    def test_robbins_lower(self):
        cert = certify_bound(spec("1/(12n+1)", "lower", r=2))
        assert cert.valid_from == 1

    def test_refutation_with_counterexample(self):
        with pytest.raises(RefutationError) as info:
            certify_bound(spec("1/(13n)", "upper", r=2))
        assert info.value.counterexample == 1
        assert info.value.stage == "threshold"

    def test_find_counterexample(self):
        assert find_counterexample(spec("1/(13n)", "upper", r=2), 1, 10) == 1
        assert find_counterexample(spec("1/(12n)", "upper", r=2), 1, 10) is None

    def test_parallel_base_cases_keep_order(self):
        cert = certify_bound(spec("1/(12n)-1/(360n^3+103n)", "upper", r=4), EngineConfig(workers=4))
        assert [b.n for b in cert.base_cases] == list(range(1, 15))

    def test_escalation_factor_reaches_base_cases(self):
        cert = certify_bound(spec("1/(12n)-1/(360n^3+103n)", "upper", r=4), EngineConfig(escalation=4))
        assert {b.prec for b in cert.base_cases} <= {64, 256, 1024, 4096, 16384}

    def test_undecidable_base_case_keeps_stage(self, monkeypatch):
        def stuck(n, *args, **kwargs):
            raise UndecidableError(f"undecidable at n={n}", n=n, prec=64)

        monkeypatch.setattr(certify_module, "strict_compare", stuck)
        with pytest.raises(StageUndecidableError) as info:
            certify_bound(spec("1/(12n)-1/(360n^3+103n)", "upper", r=4))
        assert isinstance(info.value, CertificationError)
        assert info.value.stage == "base_cases"
        assert (info.value.n, info.value.prec) == (1, 64)


class TestCertificateChecks:
    def test_json_roundtrip_has_no_floats(self, c103_certificate):
        text = c103_certificate.to_json()

        def walk(value):
            assert not isinstance(value, float)
            if isinstance(value, dict):
                for v in value.values():
                    walk(v)
            elif isinstance(value, list):
                for v in value:
                    walk(v)

        walk(json.loads(text))
        assert Certificate.from_json(text) == c103_certificate

    def test_replay(self, c103_certificate):
        assert replay_certificate(c103_certificate)

    def test_soundness_spot_check(self, c103_certificate):
        assert soundness_spot_check(c103_certificate, count=60) == []

    def test_direction_duality(self):
        lower, upper = parse_ratfunc("1/(12n+1)"), parse_ratfunc("1/(12n)")
        assert check_direction_duality(lower, upper, range(1, 50)) == []
        assert check_direction_duality(upper, lower, range(1, 4)) == [1, 2, 3]


class TestRatioMonotonicity:
    def test_plain_ratio_decreases(self):
        assert ratio_monotone_check(None, "lower", (1, 30)) is Verdict.HOLDS
        assert ratio_monotone_check(None, "upper", (1, 10)) is Verdict.VIOLATED

    def test_one_over_n_increases(self):
        assert ratio_monotone_check(parse_ratfunc("1/n"), "upper", (1, 30)) is Verdict.HOLDS

    def test_robbins_corrections(self):
        assert ratio_monotone_check(parse_ratfunc("1/(12n)"), "upper", (1, 40)) is Verdict.HOLDS
        assert ratio_monotone_check(parse_ratfunc("1/(12n+1)"), "lower", (1, 40)) is Verdict.HOLDS

    def test_invalid_range(self):
        with pytest.raises(ValueError):
            ratio_monotone_check(None, "upper", (0, 5))

    def test_range_below_certified_domain(self, c103_certificate):
        shifted = replace(c103_certificate, valid_from=5)
        with pytest.raises(SpecError):
            ratio_monotone_check(shifted.spec.a, "upper", (1, 10), certificate=shifted)
