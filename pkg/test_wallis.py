#!/usr/bin/env python3
"""
Tests for Wallis integrals, the sqrt(pi n) sandwich and the ratio table
Wallis 积分、sqrt(pi n) 夹逼与比值表测试
"""

from fractions import Fraction

import pytest

from src.core.verdict import Verdict
from src.core.wallis import (
    WallisValue,
    central_ratio,
    ratio_limit_table,
    rows_to_csv,
    sandwich_gap,
    wallis_closed_form,
    wallis_integral,
    wallis_monotone_check,
    wallis_sandwich_check,
)


class TestWallisIntegrals:
    def test_initial_values(self):
        assert wallis_integral(0) == WallisValue(Fraction(1, 2), 1)
        assert wallis_integral(1) == WallisValue(Fraction(1), 0)
        assert wallis_integral(5) == WallisValue(Fraction(8, 15), 0)
        assert wallis_integral(2) == WallisValue(Fraction(1, 4), 1)

    def test_recursion_matches_closed_form(self):
        for n in range(0, 301):
            assert wallis_integral(n) == wallis_closed_form(n)

    def test_pi_power_follows_parity(self):
        assert all(wallis_integral(n).pi_power == (1 if n % 2 == 0 else 0) for n in range(40))

    def test_invalid(self):
        with pytest.raises(ValueError):
            wallis_integral(-1)
        with pytest.raises(ValueError):
            WallisValue(Fraction(-1), 0)
        with pytest.raises(ValueError):
            WallisValue(Fraction(1), 2)

    def test_monotone(self):
        for n in range(1, 80):
            assert wallis_monotone_check(n) is Verdict.HOLDS


class TestSandwich:
    def test_central_ratio(self):
        assert central_ratio(1) == 2
        assert central_ratio(2) == Fraction(8, 3)

    def test_small_n(self):
        for n in range(1, 80):
            assert wallis_sandwich_check(n) is Verdict.HOLDS

    def test_large_n(self):
        assert wallis_sandwich_check(1000) is Verdict.HOLDS

    def test_gap_scales_like_inverse_sqrt(self):
        ratio = sandwich_gap(400, 64) / sandwich_gap(100, 64)
        assert Fraction(2, 5) < ratio.lo_rat
        assert ratio.hi_rat < Fraction(3, 5)


class TestRatioTable:
    def test_rows(self):
        rows = ratio_limit_table([1, 100, 10**4])
        assert [r.n for r in rows] == [1, 100, 10**4]
        assert all(r.envelope is Verdict.HOLDS for r in rows)
        assert rows[1].gap.is_positive()
        assert rows[1].gap.hi_rat < Fraction(22, 10**4)
        assert rows[2].gap.hi_rat < Fraction(22, 10**6)

    def test_csv(self):
        text = rows_to_csv(ratio_limit_table([1, 2]), digits=12)
        lines = text.splitlines()
        assert lines[0] == "n,lo,hi,gap_to_sqrt2pi"
        assert len(lines) == 3
        assert lines[1].startswith("1,")

    def test_empty(self):
        with pytest.raises(ValueError):
            ratio_limit_table([])
