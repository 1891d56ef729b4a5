"""
Engine configuration
引擎配置
"""

import os
from dataclasses import dataclass, replace
from typing import Optional

from .errors import ConfigError

PREC_CEILING_ENV = "STIRLING_PREC_CEILING"


@dataclass(frozen=True)
class EngineConfig:
    """Configuration shared by the certifier, the interval comparisons and the CLI"""
    # Interval precision (bits)
    start_prec: int = 64
    escalation: int = 2
    prec_ceiling: int = 16384

    # Eventual-sign search
    threshold_ceiling: int = 10**6

    # Series expansion order for tail-constant matching
    series_order: int = 16

    # Refutation scan when the eventual sign cannot hold
    counterexample_limit: int = 2000

    # Base-case parallelism (1 = sequential)
    workers: int = 1

    # Robbins/Maria interval range
    n_max: int = 1000

    def __post_init__(self):
        if self.prec_ceiling < 64:
            raise ConfigError(f"precision ceiling must be >= 64 bits, got {self.prec_ceiling}")
        if self.start_prec < 16 or self.start_prec > self.prec_ceiling:
            raise ConfigError(f"start precision {self.start_prec} outside [16, {self.prec_ceiling}]")
        if self.escalation < 2:
            raise ConfigError("escalation factor must be >= 2")

    def with_overrides(self, prec_ceiling: Optional[int] = None, workers: Optional[int] = None,
                       n_max: Optional[int] = None) -> "EngineConfig":
        changes = {}
        if prec_ceiling is not None:
            changes["prec_ceiling"] = prec_ceiling
        if workers is not None:
            changes["workers"] = max(1, workers)
        if n_max is not None:
            changes["n_max"] = n_max
        return replace(self, **changes) if changes else self

    @classmethod
    def from_env(cls, environ=None) -> "EngineConfig":
        """Build a config honouring STIRLING_PREC_CEILING"""
        environ = os.environ if environ is None else environ
        raw = environ.get(PREC_CEILING_ENV)
        if raw is None or not raw.strip():
            return cls()
        try:
            ceiling = int(raw.strip())
        except ValueError:
            raise ConfigError(f"{PREC_CEILING_ENV} must be an integer, got {raw!r}")
        return cls(prec_ceiling=ceiling)


DEFAULT_CONFIG = EngineConfig()
