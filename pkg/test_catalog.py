#!/usr/bin/env python3
"""
Tests for the bound catalog and the reproduction report
界目录与复现报告测试
"""

import json

import pytest

from src.catalog import (
    Comparison,
    catalog_list,
    compare_polynomials,
    get_entry,
    reference_variants,
    reproduce_paper,
    resolve_bound,
)
from src.catalog.reproduction import DUALITY_PAIRS
from src.core.certify import check_direction_duality
from src.core.config import EngineConfig
from src.core.errors import SpecError
from src.core.exact import Poly
from src.core.verdict import Direction


class TestCatalog:
    def test_entries(self):
        names = [e.name for e in catalog_list()]
        assert len(names) == 11
        assert len(set(names)) == 11
        assert names[:3] == ["robbins_upper", "robbins_lower", "maria_lower"]

    def test_printed_thresholds(self):
        printed = {e.name: e.printed_threshold for e in catalog_list() if e.printed_threshold is not None}
        assert printed == {
            "five_n_lower": 13, "five_n_upper": 6, "c103_upper": 14, "c102_lower": 10,
            "t944_upper": 33, "t945_lower": 5, "t2376_upper": 8, "t2375_lower": 58,
        }

    def test_corrections_are_proper(self):
        for entry in catalog_list() + reference_variants():
            a = entry.spec.a
            assert a.num.degree < a.den.degree, entry.name

    def test_only_classical_bounds_lack_truncation(self):
        numeric = {e.name for e in catalog_list() if not e.certifiable}
        assert numeric == {"robbins_upper", "robbins_lower", "maria_lower"}

    def test_five_n_claims_from_three(self):
        assert get_entry("five_n_lower").spec.claim_from == 3
        assert get_entry("five_n_upper").spec.claim_from == 3
        assert get_entry("five_n_lower").spec.r == 4

    def test_unknown_name(self):
        with pytest.raises(SpecError):
            get_entry("nope")


class TestResolveBound:
    def test_catalog_name(self):
        spec = resolve_bound("c103_upper", "upper")
        assert spec.r == 4
        assert spec.direction is Direction.UPPER

    def test_direction_mismatch(self):
        with pytest.raises(SpecError):
            resolve_bound("c103_upper", "lower")

    def test_free_expression(self):
        spec = resolve_bound(" 1/(12n) ", Direction.UPPER, r=2)
        assert spec.name == "1/(12n)"
        assert spec.r == 2
        assert spec.claim_from == 1


class TestDuality:
    @pytest.mark.parametrize("lower_name, upper_name", DUALITY_PAIRS)
    def test_pairs_are_consistent(self, lower_name, upper_name):
        lower, upper = get_entry(lower_name).spec, get_entry(upper_name).spec
        start = max(lower.claim_from, upper.claim_from)
        assert check_direction_duality(lower.a, upper.a, range(start, start + 100)) == []

    def test_plus_sign_variants_contradict(self):
        lower, upper = (e.spec for e in reference_variants())
        assert check_direction_duality(lower.a, upper.a, range(3, 20)) != []


class TestComparePolynomials:
    def test_outcomes(self):
        p = Poly.from_descending([2, -4, 6])
        assert compare_polynomials(p, p) is Comparison.MATCH
        assert compare_polynomials(p, Poly.from_descending([1, -2, 3])) is Comparison.SCALED_MATCH
        assert compare_polynomials(p, Poly.from_descending([-1, 2, -3])) is Comparison.MISMATCH
        assert compare_polynomials(p, Poly.from_descending([1, -2, 4])) is Comparison.MISMATCH


@pytest.fixture(scope="module")
def report():
    return reproduce_paper(EngineConfig(n_max=50), names=["c103_upper", "c102_lower", "robbins_upper"])


class TestReproduction:
    def test_ok(self, report):
        assert report.ok
        rows = {row.name: row for row in report.entries}
        assert rows["c103_upper"].certified
        assert rows["c103_upper"].valid_from == 1
        assert rows["c102_lower"].valid_from == 8
        assert rows["c103_upper"].derived_threshold == 15
        assert rows["c103_upper"].threshold_match is False
        assert rows["c102_lower"].threshold_match
        assert rows["c103_upper"].printed_comparison in (Comparison.MATCH, Comparison.SCALED_MATCH)
        assert rows["robbins_upper"].range_check.value == "holds"

    def test_duality_only_for_selected_pairs(self, report):
        assert report.duality == (("c102_lower", "c103_upper", ()),)
        assert report.variants == ()

    def test_json_is_deterministic_and_float_free(self, report):
        again = reproduce_paper(EngineConfig(n_max=50), names=["c103_upper", "c102_lower", "robbins_upper"])
        assert report.to_json() == again.to_json()
        assert all(not isinstance(v, float) for row in json.loads(report.to_json())["entries"] for v in row.values())

    def test_text(self, report):
        text = report.to_text()
        assert text.splitlines()[-1] == "OK"
        assert "certified n >= 8" in text

    def test_typeset_thresholds_are_reported(self, report):
        rows = {row["name"]: row for row in json.loads(report.to_json())["entries"]}
        assert rows["c102_lower"]["printed_threshold"] == "10"
        assert rows["c102_lower"]["threshold_match"] is True
        assert rows["c103_upper"]["printed_threshold"] == "14"
        assert rows["c103_upper"]["derived_threshold"] == "15"
        assert rows["c103_upper"]["printed_base_range"] == ["1", "14"]
        assert rows["robbins_upper"]["printed_threshold"] is None

        lines = {line.split()[0]: line.split() for line in report.to_text().splitlines() if line.startswith("c10")}
        assert lines["c102_lower"][5:8] == ["10", "10", "yes"]
        assert lines["c103_upper"][5:8] == ["14", "15", "no"]
