"""
End-to-end reproduction of the catalog: derivation, thresholds, certificates
目录的端到端复现：推导、阈值与证书
"""

import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from ..core.certify import certify_bound, check_direction_duality, derive_difference, eventual_sign_threshold, \
    ratio_monotone_check
from ..core.config import DEFAULT_CONFIG, EngineConfig
from ..core.errors import CertificationError, RefutationError, StirlingError
from ..core.exact import Poly, ratio_to_scalar
from ..core.precision import strict_compare
from ..core.verdict import Verdict
from .entries import CatalogEntry, catalog_list, get_entry, reference_variants

MONOTONE_RANGE = (1, 100)
DUALITY_WINDOW = 200
DUALITY_PAIRS = (
    ("robbins_lower", "robbins_upper"),
    ("maria_lower", "robbins_upper"),
    ("five_n_lower", "five_n_upper"),
    ("c102_lower", "c103_upper"),
    ("t945_lower", "t944_upper"),
    ("t2375_lower", "t2376_upper"),
)


class Comparison(str, Enum):
    MATCH = "match"
    SCALED_MATCH = "scaled-match"
    MISMATCH = "mismatch"


def compare_polynomials(derived: Poly, printed: Poly) -> Comparison:
    """Exact equality, equality up to a positive rational factor, or neither"""
    if derived == printed:
        return Comparison.MATCH
    scale = ratio_to_scalar(printed, derived)
    if scale is not None and scale > 0:
        return Comparison.SCALED_MATCH
    return Comparison.MISMATCH


@dataclass(frozen=True)
class EntryRow:
    """Outcome for one catalog bound"""
    name: str
    direction: str
    claim_from: int
    r: Optional[int] = None
    derived_poly: Optional[str] = None
    printed_comparison: Optional[Comparison] = None
    printed_threshold: Optional[int] = None
    printed_base_range: Optional[Tuple[int, int]] = None
    derived_threshold: Optional[int] = None
    threshold_match: Optional[bool] = None
    certified: Optional[bool] = None
    valid_from: Optional[int] = None
    counterexample: Optional[int] = None
    range_check: Optional[Verdict] = None
    monotone: Optional[Verdict] = None
    error: Optional[str] = None
    notes: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        if self.certified is not None and not self.certified:
            return False
        return self.range_check in (None, Verdict.HOLDS)

    def to_dict(self) -> Dict[str, Any]:
        def s(value):
            return None if value is None else str(value)

        return {
            "name": self.name,
            "direction": self.direction,
            "claim_from": str(self.claim_from),
            "r": s(self.r),
            "derived_poly": self.derived_poly,
            "printed_comparison": None if self.printed_comparison is None else self.printed_comparison.value,
            "printed_threshold": s(self.printed_threshold),
            "printed_base_range": None if self.printed_base_range is None else [s(n) for n in self.printed_base_range],
            "derived_threshold": s(self.derived_threshold),
            "threshold_match": self.threshold_match,
            "certified": self.certified,
            "valid_from": s(self.valid_from),
            "counterexample": s(self.counterexample),
            "range_check": None if self.range_check is None else self.range_check.value,
            "monotone": None if self.monotone is None else self.monotone.value,
            "error": self.error,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class ReproductionReport:
    """
    Deterministic report over every catalog entry
    覆盖所有目录条目的确定性报告
    """
    entries: Tuple[EntryRow, ...]
    variants: Tuple[EntryRow, ...] = ()
    duality: Tuple[Tuple[str, str, Tuple[int, ...]], ...] = field(default_factory=tuple)
    n_max: int = DEFAULT_CONFIG.n_max

    @property
    def ok(self) -> bool:
        """True iff every certificate was issued and every range check held"""
        return all(row.ok for row in self.entries) and all(not bad for _, _, bad in self.duality)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "n_max": str(self.n_max),
            "entries": [row.to_dict() for row in sorted(self.entries, key=lambda r: r.name)],
            "reference_variants": [row.to_dict() for row in sorted(self.variants, key=lambda r: r.name)],
            "direction_duality": [
                {"lower": lo, "upper": hi, "violations": [str(n) for n in bad]} for lo, hi, bad in self.duality
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        header = (f"{'bound':<20}{'dir':<7}{'r':>3}{'from':>6}{'printed':>14}"
                  f"{'N* typeset':>12}{'N* derived':>11}{'match':>7}  result")
        lines = [header, "-" * len(header)]
        for row in sorted(self.entries, key=lambda r: r.name):
            lines.append(self._line(row))
        if self.variants:
            lines.append("")
            lines.append("reference variants (as typeset)")
            for row in sorted(self.variants, key=lambda r: r.name):
                lines.append(self._line(row))
        notes = [(row.name, note) for row in self.entries + self.variants for note in row.notes]
        if notes:
            lines.append("")
            lines.extend(f"note {name}: {note}" for name, note in notes)
        for lo, hi, bad in self.duality:
            if bad:
                lines.append(f"contradictory pair {lo}/{hi} at n = {', '.join(map(str, bad[:10]))}")
        lines.append("")
        lines.append("OK" if self.ok else "FAILED")
        return "\n".join(lines)

    @staticmethod
    def _line(row: EntryRow) -> str:
        def s(value):
            return "-" if value is None else str(value)

        if row.certified:
            result = f"certified n >= {row.valid_from}"
        elif row.counterexample is not None:
            result = f"refuted at n = {row.counterexample}"
        elif row.error:
            result = f"error: {row.error}"
        elif row.range_check is not None:
            result = f"range 1..: {row.range_check.value}, monotone: {s(row.monotone and row.monotone.value)}"
        else:
            result = "derived"
        printed = s(row.printed_comparison and row.printed_comparison.value)
        match = "-" if row.threshold_match is None else ("yes" if row.threshold_match else "no")
        return (f"{row.name:<20}{row.direction:<7}{s(row.r):>3}{row.claim_from:>6}{printed:>14}"
                f"{s(row.printed_threshold):>12}{s(row.derived_threshold):>11}{match:>7}  {result}")


def _derive(entry: CatalogEntry, config: EngineConfig) -> Dict[str, Any]:
    spec = entry.spec
    derivation = derive_difference(spec, config)
    found: Dict[str, Any] = {
        "derived_poly": derivation.claim.p.to_text(),
        "printed_threshold": entry.printed_threshold,
        "printed_base_range": entry.printed_base_range,
    }
    if entry.printed_poly is not None:
        found["printed_comparison"] = compare_polynomials(derivation.claim.p, entry.printed_poly)
    try:
        # thresholds are compared from n = 1, the way they are typeset
        threshold = eventual_sign_threshold(derivation.claim, 1, config.threshold_ceiling)
        found["derived_threshold"] = threshold
        if entry.printed_threshold is not None:
            found["threshold_match"] = threshold == entry.printed_threshold
    except CertificationError as e:
        found["error"] = str(e)
        if entry.printed_threshold is not None:
            found["threshold_match"] = False
    return found


def _certifiable_row(entry: CatalogEntry, config: EngineConfig, verbose: bool) -> EntryRow:
    spec = entry.spec
    found = _derive(entry, config)
    try:
        cert = certify_bound(spec, config, verbose)
        found.update(certified=True, valid_from=cert.valid_from)
    except RefutationError as e:
        found.update(certified=False, counterexample=e.counterexample, error=str(e))
    except StirlingError as e:
        found.update(certified=False, error=str(e))
    return EntryRow(spec.name, spec.direction.value, spec.claim_from, spec.r, notes=entry.notes, **found)


def _numeric_row(entry: CatalogEntry, config: EngineConfig) -> EntryRow:
    """Bounds stated without derivation: interval check on 1..n_max plus ratio monotonicity"""
    spec = entry.spec
    range_check = Verdict.HOLDS
    error = None
    try:
        for n in range(spec.claim_from, config.n_max + 1):
            if strict_compare(n, spec.a, spec.direction, config.prec_ceiling, config.start_prec,
                              config.escalation).verdict is not Verdict.HOLDS:
                range_check, error = Verdict.FAILS, f"fails at n={n}"
                break
    except StirlingError as e:
        range_check, error = Verdict.UNDECIDABLE, str(e)
    try:
        monotone = ratio_monotone_check(spec.a, spec.direction, MONOTONE_RANGE, prec_ceiling=config.prec_ceiling)
    except StirlingError:
        monotone = Verdict.UNDECIDABLE
    return EntryRow(spec.name, spec.direction.value, spec.claim_from, range_check=range_check,
                    monotone=monotone, error=error, notes=entry.notes)


def _variant_row(entry: CatalogEntry, config: EngineConfig) -> EntryRow:
    spec = entry.spec
    try:
        found = _derive(entry, config)
    except StirlingError as e:
        found = {"error": str(e)}
    return EntryRow(spec.name, spec.direction.value, spec.claim_from, spec.r, notes=entry.notes, **found)


def reproduce_paper(config: EngineConfig = DEFAULT_CONFIG, verbose: bool = False,
                    names: Optional[List[str]] = None) -> ReproductionReport:
    """
    Derive, compare and certify every catalog entry
    推导、比较并认证所有目录条目

    Failures become report rows; nothing is raised for a bound that does not certify.
    """
    entries = catalog_list() if names is None else [get_entry(name) for name in names]

    def row_for(entry: CatalogEntry) -> EntryRow:
        if verbose:
            print(f"reproduce {entry.name}", file=sys.stderr)
        if entry.certifiable:
            return _certifiable_row(entry, config, verbose)
        return _numeric_row(entry, config)

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(row_for, entries))
    else:
        rows = [row_for(entry) for entry in entries]

    variants = tuple(_variant_row(entry, config) for entry in reference_variants()) if names is None else ()

    selected = {entry.name for entry in entries}
    duality = []
    for lower_name, upper_name in DUALITY_PAIRS:
        if lower_name in selected and upper_name in selected:
            lower, upper = get_entry(lower_name).spec, get_entry(upper_name).spec
            start = max(lower.claim_from, upper.claim_from)
            bad = check_direction_duality(lower.a, upper.a, range(start, start + DUALITY_WINDOW))
            duality.append((lower_name, upper_name, tuple(bad)))

    return ReproductionReport(tuple(rows), variants, tuple(duality), config.n_max)
