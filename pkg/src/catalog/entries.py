"""
Catalog of published Stirling-type bounds with their typeset reference data
已发表的 Stirling 型界及其印刷参考数据
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from ..core.certificate import BoundSpec
from ..core.errors import SpecError
from ..core.exact import Poly
from ..core.expr import parse_ratfunc
from ..core.verdict import Direction


@dataclass(frozen=True)
class CatalogEntry:
    """
    One bound with the polynomial and threshold exactly as typeset by its authors
    一个界以及作者印刷的多项式和阈值
    """
    spec: BoundSpec
    printed_poly: Optional[Poly] = None
    printed_threshold: Optional[int] = None
    printed_base_range: Optional[Tuple[int, int]] = None
    provenance: str = ""
    notes: Tuple[str, ...] = ()

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def certifiable(self) -> bool:
        return self.spec.r is not None


def _poly(text: str) -> Poly:
    f = parse_ratfunc(text)
    if f.den.degree != 0:
        raise SpecError(f"printed polynomial is not a polynomial: {text}")
    return f.num.scale(1 / f.den.leading)


def _entry(name: str, direction: str, a_text: str, r: Optional[int] = None, claim_from: int = 1,
           printed: Optional[str] = None, threshold: Optional[int] = None,
           base: Optional[Tuple[int, int]] = None, provenance: str = "", notes: Tuple[str, ...] = ()) -> CatalogEntry:
    spec = BoundSpec(name, Direction(direction), parse_ratfunc(a_text), r, claim_from, a_text)
    return CatalogEntry(spec, _poly(printed) if printed else None, threshold, base, provenance, notes)


# Polynomials as typeset for the plus-sign 2/(5n) family; kept for comparison only
PLUS_FAMILY_LOWER_POLY = (
    "460000n^9+460000n^8-62970400n^7-181440000n^6-191576090n^5"
    "-72519910n^4-5874457n^3-859176n^2+1422450n+498555"
)
PLUS_FAMILY_UPPER_POLY = (
    "-2280000n^10-2280000n^9-29928000n^8+322560000n^7+990219780n^6"
    "+1047284220n^5+394378298n^4+31555984n^3+2970300n^2-9501470n-3312155"
)

_MISSING_SIGN_NOTE = (
    "typeset result formula drops the minus sign before 1/(1680n^7+...); "
    "the a(n) header row is used"
)


@lru_cache(maxsize=1)
def _build() -> Tuple[CatalogEntry, ...]:
    entries = [
        _entry("robbins_upper", "upper", "1/(12n)", provenance="Robbins (1955), upper factor e^(1/(12n))"),
        _entry("robbins_lower", "lower", "1/(12n+1)", provenance="Robbins (1955), lower factor e^(1/(12n+1))"),
        _entry("maria_lower", "lower", "1/(12n+3/(2(2n+1)))", provenance="Maria (1965), tighter lower factor"),
        _entry(
            "five_n_lower", "lower", "1/(12n+2/(5n)-0.9/(10n^3))", r=4, claim_from=3,
            printed=PLUS_FAMILY_LOWER_POLY, threshold=13, base=(3, 12),
            provenance="2/(5n) family, lower bound for n >= 3",
            notes=("typeset a(n) carries +.9/(10n^3); the minus-sign form is certified",),
        ),
        _entry(
            "five_n_upper", "upper", "1/(12n+2/(5n)-1.1/(10n^3))", r=4, claim_from=3,
            printed=PLUS_FAMILY_UPPER_POLY, threshold=6, base=(1, 5),
            provenance="2/(5n) family, upper bound",
            notes=("typeset a(n) carries +1.1/(10n^3); the minus-sign form is certified",),
        ),
        _entry(
            "c103_upper", "upper", "1/(12n)-1/(360n^3+103n)", r=4, claim_from=1,
            printed="-3600n^7-1687578n^5+30717978n^4+58917996n^3+49497870n^2+16976975n+11683805",
            threshold=14, base=(1, 14), provenance="two-term correction, 103 family",
            notes=("sign polynomial is still positive at n = 14, so the minimal threshold is 15; "
                   "the typeset base range 1..14 covers the gap",),
        ),
        _entry(
            "c102_lower", "lower", "1/(12n)-1/(360n^3+102n)", r=5, claim_from=8,
            printed="600n^8-46338n^6+46338n^5-782124n^4-1506090n^3-1253245n^2-429471n-293216",
            threshold=10, base=(8, 9), provenance="two-term correction, 102 family",
        ),
        _entry(
            "t944_upper", "upper", "1/(12n)-1/(360n^3)+1/(1260n^5+944n^3)", r=5, claim_from=26,
            printed=(
                "-24255n^9-24255n^8+19534030n^7+208372500n^6+846744589n^5+1608743411n^4"
                "+1838090736n^3+1481505592n^2+901562480n+294921648"
            ),
            threshold=33, provenance="three-term correction, 944 family",
        ),
        _entry(
            "t945_lower", "lower", "1/(12n)-1/(360n^3)+1/(1260n^5+945n^3)", r=6, claim_from=1,
            printed="3156n^8-31463n^6-126937n^5-241045n^4-275373n^3-221928n^2-135072n-44100",
            threshold=5, provenance="three-term correction, 945 family",
        ),
        _entry(
            "t2376_upper", "upper", "1/(12n)-1/(360n^3)+1/(1260n^5)-1/(1680n^7+2376n^5)", r=6, claim_from=1,
            printed=(
                "-2730n^11-5460n^10-28258433n^9+88168297n^8+701534344n^7+2112056100n^6"
                "+4069612325n^5+5596290735n^4+5773252968n^3+4320089004n^2+2021099850n+425134710"
            ),
            threshold=8, provenance="four-term correction, 2376 family", notes=(_MISSING_SIGN_NOTE,),
        ),
        _entry(
            "t2375_lower", "lower", "1/(12n)-1/(360n^3)+1/(1260n^5)-1/(1680n^7+2375n^5)", r=7, claim_from=53,
            printed=(
                "196560n^12+393120n^11-650113107n^10-650309667n^9-2613399138n^8-15256200960n^7"
                "-45641758349n^6-87900450451n^5-120821404840n^4-124589009460n^3"
                "-93179955210n^2-43560354750n-9152946000"
            ),
            threshold=58, provenance="four-term correction, 2375 family", notes=(_MISSING_SIGN_NOTE,),
        ),
    ]
    return tuple(entries)


@lru_cache(maxsize=1)
def _reference_variants() -> Tuple[CatalogEntry, ...]:
    # The plus-sign pair as typeset; self-contradictory (its lower a(n) exceeds its upper a(n))
    return (
        _entry("five_n_plus_lower", "lower", "1/(12n+0.4/n+0.09/n^3)", r=4, claim_from=3,
               printed=PLUS_FAMILY_LOWER_POLY, threshold=13, base=(3, 12),
               provenance="2/(5n) family as typeset, lower"),
        _entry("five_n_plus_upper", "upper", "1/(12n+0.4/n+0.11/n^3)", r=4, claim_from=1,
               printed=PLUS_FAMILY_UPPER_POLY, threshold=6, base=(1, 5),
               provenance="2/(5n) family as typeset, upper"),
    )


def catalog_list() -> List[CatalogEntry]:
    """All catalog bounds, in publication order"""
    return list(_build())


def reference_variants() -> List[CatalogEntry]:
    return list(_reference_variants())


def _index() -> Dict[str, CatalogEntry]:
    return {e.name: e for e in _build() + _reference_variants()}


def get_entry(name: str) -> CatalogEntry:
    try:
        return _index()[name.strip()]
    except KeyError:
        raise SpecError(f"Unknown catalog bound: {name!r}")


def resolve_bound(name_or_expr: str, direction, r: Optional[int] = None, claim_from: int = 1) -> BoundSpec:
    """
    Catalog name or free-form a(n) expression to a BoundSpec
    将目录名称或表达式解析为界规格

    Catalog names keep their own r and claim_from; their direction must agree.
    """
    direction = Direction.parse(direction)
    key = name_or_expr.strip()
    if key in _index():
        spec = _index()[key].spec
        if spec.direction is not direction:
            raise SpecError(f"{key} is a {spec.direction.value} bound, not a {direction.value} bound")
        return spec
    return BoundSpec(key, direction, parse_ratfunc(key), r, claim_from, key)
