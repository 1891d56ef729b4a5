"""
Bound specifications, sign claims and certificates
界的规格、符号断言与证书

Certificates serialize to JSON with every exact integer or rational written as a
decimal string, never as a float.
"""

import json
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from .exact import Poly, RatFunc, poly_from_json, poly_to_json, ratfunc_from_json, ratfunc_to_json
from .verdict import Direction, Verdict

SCHEMA_VERSION = 1


class RequiredSign(str, Enum):
    NONNEGATIVE = ">=0"
    NONPOSITIVE = "<=0"

    @property
    def factor(self) -> int:
        return 1 if self is RequiredSign.NONNEGATIVE else -1

    @classmethod
    def for_direction(cls, direction: Direction) -> "RequiredSign":
        return cls.NONNEGATIVE if direction is Direction.LOWER else cls.NONPOSITIVE


@dataclass(frozen=True)
class BoundSpec:
    """
    Candidate bound n! >= / <= sqrt(2 pi n)(n/e)^n e^{a(n)} for n >= claim_from
    候选界的规格
    """
    name: str
    direction: Direction
    a: RatFunc
    r: Optional[int] = None  # truncation parameter; None for bounds checked only numerically
    claim_from: int = 1
    a_text: Optional[str] = None

    @property
    def truncation(self) -> int:
        """Number of series terms used: 2r-1 for lower bounds, 2r for upper bounds"""
        if self.r is None:
            raise ValueError(f"bound {self.name!r} carries no truncation parameter")
        return 2 * self.r - 1 if self.direction is Direction.LOWER else 2 * self.r

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "direction": self.direction.value,
            "a": ratfunc_to_json(self.a),
            "a_text": self.a_text,
            "r": None if self.r is None else str(self.r),
            "claim_from": str(self.claim_from),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BoundSpec":
        return cls(
            name=data["name"],
            direction=Direction.parse(data["direction"]),
            a=ratfunc_from_json(data["a"]),
            r=None if data.get("r") is None else int(data["r"]),
            claim_from=int(data["claim_from"]),
            a_text=data.get("a_text"),
        )


@dataclass(frozen=True)
class SignClaim:
    """Primitive integer polynomial with a required sign, certified from threshold on"""
    p: Poly
    required_sign: RequiredSign
    threshold: Optional[int] = None

    def with_threshold(self, threshold: int) -> "SignClaim":
        return SignClaim(self.p, self.required_sign, threshold)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": poly_to_json(self.p),
            "p_text": self.p.to_text(),
            "required_sign": self.required_sign.value,
            "threshold": None if self.threshold is None else str(self.threshold),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SignClaim":
        threshold = data.get("threshold")
        return cls(poly_from_json(data["p"]), RequiredSign(data["required_sign"]),
                   None if threshold is None else int(threshold))


@dataclass(frozen=True)
class BaseCase:
    n: int
    verdict: Verdict
    prec: int

    def to_dict(self) -> Dict[str, str]:
        return {"n": str(self.n), "verdict": self.verdict.value, "precision_bits": str(self.prec)}

    @classmethod
    def from_dict(cls, data: Dict[str, str]) -> "BaseCase":
        return cls(int(data["n"]), Verdict(data["verdict"]), int(data["precision_bits"]))


@dataclass(frozen=True)
class Certificate:
    """
    Replayable proof object for one bound on [valid_from, infinity)
    单个界的可重放证明对象
    """
    spec: BoundSpec
    claim: SignClaim
    base_cases: Tuple[BaseCase, ...]
    valid_from: int
    derivation_transcript: RatFunc  # D(n) = S_m(n) - (a(n) - a(n+1)) before clearing denominators
    denominator_sign: int = 1
    roots_beyond_threshold: int = 0  # Sturm cross-check count

    @property
    def threshold(self) -> int:
        return self.claim.threshold

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": str(SCHEMA_VERSION),
            "spec": self.spec.to_dict(),
            "claim": self.claim.to_dict(),
            "base_cases": [b.to_dict() for b in self.base_cases],
            "valid_from": str(self.valid_from),
            "derivation_transcript": ratfunc_to_json(self.derivation_transcript),
            "denominator_sign": str(self.denominator_sign),
            "roots_beyond_threshold": str(self.roots_beyond_threshold),
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Certificate":
        version = int(data.get("schema_version", SCHEMA_VERSION))
        if version != SCHEMA_VERSION:
            raise ValueError(f"Unsupported certificate schema version {version}")
        return cls(
            spec=BoundSpec.from_dict(data["spec"]),
            claim=SignClaim.from_dict(data["claim"]),
            base_cases=tuple(BaseCase.from_dict(b) for b in data["base_cases"]),
            valid_from=int(data["valid_from"]),
            derivation_transcript=ratfunc_from_json(data["derivation_transcript"]),
            denominator_sign=int(data.get("denominator_sign", "1")),
            roots_beyond_threshold=int(data.get("roots_beyond_threshold", "0")),
        )

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))
