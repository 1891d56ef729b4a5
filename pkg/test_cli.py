#!/usr/bin/env python3
"""
Tests for the stirling-bounds command line
stirling-bounds 命令行测试
"""

import json

import pytest

import src.core.certify as certify_module
from src.core.errors import UndecidableError
from src.core.expr import parse_ratfunc
from src.product.cli import EXIT_OK, EXIT_REFUTED, EXIT_UNDECIDABLE, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestSeries:
    def test_last_coefficient(self, capsys):
        code, out, _ = run(capsys, "series", "--upto", "12")
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == "1/12"
        assert lines[-1] == "11/312"
        assert len(lines) == 11

    def test_tail_constant_json(self, capsys):
        code, out, _ = run(capsys, "series", "--upto", "6", "--tail", "1/(12n)-1/(360n^3+c*n)",
                           "--order", "5", "--json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["coefficients"]["2"] == "1/12"
        assert payload["tail"]["c"] == "720/7"

    def test_tail_needs_order(self, capsys):
        code, _, err = run(capsys, "series", "--upto", "6", "--tail", "c/n^3")
        assert code == EXIT_USAGE
        assert "--order" in err


class TestCertify:
    def test_catalog_bound_json(self, capsys, tmp_path):
        out_file = tmp_path / "c103.json"
        code, out, _ = run(capsys, "certify", "--an", "c103_upper", "--format", "json", "--out", str(out_file))
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["claim"]["threshold"] == "15"
        assert json.loads(out_file.read_text(encoding="utf-8")) == payload

    def test_free_expression_text(self, capsys):
        code, out, _ = run(capsys, "certify", "--an", "1/(12n)-1/(360n^3+103n)", "--r", "4",
                           "--direction", "upper", "--from", "1")
        assert code == EXIT_OK
        assert "N* = 15" in out
        assert "certified for every n >= 1" in out

    def test_refuted(self, capsys):
        code, _, err = run(capsys, "certify", "--an", "1/(13n)", "--r", "2", "--direction", "upper")
        assert code == EXIT_REFUTED
        assert "counterexample n=1" in err

    def test_parse_error(self, capsys):
        code, _, err = run(capsys, "certify", "--an", "1/(12n", "--r", "2", "--direction", "upper")
        assert code == EXIT_USAGE
        assert "byte 6" in err

    def test_json_error_envelope(self, capsys):
        code, out, _ = run(capsys, "certify", "--an", "1/(13n)", "--r", "2", "--direction", "upper", "--json")
        assert code == EXIT_REFUTED
        payload = json.loads(out)
        assert payload["type"] == "RefutationError"
        assert payload["counterexample"] == "1"
        assert payload["stage"] == "threshold"

    @pytest.mark.parametrize("r_args", [[], ["--r", "1"]])
    def test_free_expression_needs_r(self, capsys, r_args):
        code, _, err = run(capsys, "certify", "--an", "1/(12n+1)", "--direction", "lower", *r_args)
        assert code == EXIT_USAGE
        assert "--r" in err

    def test_undecidable_base_case_envelope(self, capsys, monkeypatch):
        def stuck(n, *args, **kwargs):
            raise UndecidableError(f"undecidable at n={n}", n=n, prec=64)

        monkeypatch.setattr(certify_module, "strict_compare", stuck)
        code, out, _ = run(capsys, "certify", "--an", "c103_upper", "--json")
        assert code == EXIT_UNDECIDABLE
        payload = json.loads(out)
        assert payload["stage"] == "base_cases"
        assert payload["n"] == "1"

    def test_missing_required_option(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["certify"])
        assert info.value.code == EXIT_USAGE


class TestSandwichAndEval:
    def test_robbins_sandwich(self, capsys):
        code, out, _ = run(capsys, "sandwich", "--n", "10", "--lower", "robbins_lower",
                           "--upper", "robbins_upper", "--json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["contains_factorial"] is True
        assert payload["factorial"] == "3628800"
        assert int(payload["digits_pinned"]) >= 3

    def test_reversed_pair_is_refuted(self, capsys):
        code, _, _ = run(capsys, "sandwich", "--n", "10", "--lower", "1/(12n)", "--upper", "1/(12n+1)")
        assert code == EXIT_REFUTED

    def test_eval(self, capsys):
        code, out, _ = run(capsys, "eval", "--n", "5", "--an", "robbins_upper", "--json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["verdict"] == "holds"
        assert payload["direction"] == "upper"

    def test_eval_below_claimed_domain(self, capsys):
        code, _, _ = run(capsys, "eval", "--n", "2", "--an", "c102_lower")
        assert code == EXIT_USAGE


class TestWallisAndParse:
    def test_wallis_rows(self, capsys):
        code, out, _ = run(capsys, "wallis", "--max-n", "3")
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert len(lines) == 3
        assert all("monotone holds" in line and "sandwich holds" in line for line in lines)

    def test_wallis_csv(self, capsys):
        code, out, _ = run(capsys, "wallis", "--max-n", "1", "--table", "1,10", "--csv")
        assert code == EXIT_OK
        assert out.splitlines()[0] == "n,lo,hi,gap_to_sqrt2pi"
        assert len(out.splitlines()) == 3

    def test_parse(self, capsys):
        code, out, _ = run(capsys, "parse", "\\frac{1}{12n}", "--json")
        assert code == EXIT_OK
        assert parse_ratfunc(json.loads(out)["expr"]) == parse_ratfunc("1/(12n)")


class TestEnvironment:
    def test_bad_precision_ceiling(self, capsys, monkeypatch):
        monkeypatch.setenv("STIRLING_PREC_CEILING", "lots")
        code, _, err = run(capsys, "series", "--upto", "3")
        assert code == EXIT_USAGE
        assert "STIRLING_PREC_CEILING" in err

    def test_ceiling_below_minimum(self, capsys):
        code, _, _ = run(capsys, "series", "--upto", "3", "--prec-ceiling", "32")
        assert code == EXIT_USAGE

    def test_timing(self, capsys):
        code, _, err = run(capsys, "series", "--upto", "3", "--timing")
        assert code == EXIT_OK
        assert err.startswith("elapsed ")
