"""
Performance benchmarks for certification and interval checks
认证与区间检验的性能基准测试

Times the main pipelines so regressions in the threshold search, base-case
verification or precision escalation show up early.
对主要流程计时，尽早发现阈值搜索、基例验证或精度提升中的性能回归。
"""

import json
import platform
import statistics
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List

import pytest

# Add parent directories to path
sys.path.append(str(Path(__file__).parent.parent))

from src.catalog import catalog_list, get_entry
from src.core.certify import certify_bound
from src.core.config import EngineConfig
from src.core.precision import strict_compare
from src.core.series import correction_coefficients
from src.core.wallis import wallis_sandwich_check


@dataclass
class BenchmarkResult:
    """Results from a single benchmark"""
    task: str
    runs: int
    median_ms: float
    best_ms: float
    items: int

    @property
    def items_per_second(self) -> float:
        return self.items / (self.median_ms / 1000) if self.median_ms > 0 else 0.0


@dataclass
class BenchmarkSuite:
    timestamp: str
    system_info: Dict[str, Any]
    results: List[BenchmarkResult]


def _time(task: str, fn: Callable[[], Any], items: int = 1, runs: int = 3) -> BenchmarkResult:
    samples = []
    for _ in range(runs):
        started = time.perf_counter()
        fn()
        samples.append((time.perf_counter() - started) * 1000)
    return BenchmarkResult(task, runs, statistics.median(samples), min(samples), items)


class PerformanceBenchmarks:
    """Benchmark suite over the catalog and the interval checks"""

    def __init__(self, runs: int = 3):
        self.runs = runs
        self.results: List[BenchmarkResult] = []

    def run(self) -> BenchmarkSuite:
        print("Starting performance benchmarks...")
        for entry in catalog_list():
            if entry.certifiable:
                self.results.append(_time(f"certify {entry.name}", lambda e=entry: certify_bound(e.spec),
                                          runs=self.runs))

        robbins = get_entry("robbins_upper").spec
        self.results.append(_time(
            "strict_compare 1..1000",
            lambda: [strict_compare(n, robbins.a, robbins.direction) for n in range(1, 1001)],
            items=1000, runs=self.runs,
        ))
        self.results.append(_time(
            "wallis sandwich 1..500", lambda: [wallis_sandwich_check(n) for n in range(1, 501)],
            items=500, runs=self.runs,
        ))
        self.results.append(_time("correction coefficients to 40", lambda: correction_coefficients(40),
                                  runs=self.runs))
        return BenchmarkSuite(time.strftime("%Y-%m-%d %H:%M:%S"), self._system_info(), self.results)

    @staticmethod
    def _system_info() -> Dict[str, Any]:
        info: Dict[str, Any] = {
            "platform": platform.platform(),
            "python_version": platform.python_version(),
        }
        try:
            import mpmath
            info["mpmath_version"] = mpmath.__version__
            info["mpmath_backend"] = mpmath.libmp.BACKEND
        except ImportError:
            info["mpmath_version"] = "not available"
        return info

    @staticmethod
    def save_results(suite: BenchmarkSuite, filename: str = None):
        if filename is None:
            filename = f"benchmark_results_{time.strftime('%Y%m%d_%H%M%S')}.json"
        with open(filename, "w") as f:
            json.dump(asdict(suite), f, indent=2)
        print(f"Benchmark results saved to {filename}")

    @staticmethod
    def print_summary(suite: BenchmarkSuite):
        print("\n" + "=" * 60)
        print("PERFORMANCE BENCHMARK SUMMARY")
        print("=" * 60)
        print(f"Timestamp: {suite.timestamp}")
        print(f"Python: {suite.system_info.get('python_version')}  mpmath: {suite.system_info.get('mpmath_version')}"
              f" ({suite.system_info.get('mpmath_backend', '?')})")
        print("-" * 60)
        for r in suite.results:
            print(f"{r.task:<36} {r.median_ms:9.1f}ms  best {r.best_ms:8.1f}ms")


@pytest.mark.benchmark
@pytest.mark.slow
class TestPerformance:
    """Loose ceilings; they catch order-of-magnitude regressions only"""

    def test_c103_certification_is_fast(self):
        result = _time("certify c103_upper", lambda: certify_bound(get_entry("c103_upper").spec), runs=1)
        assert result.median_ms < 10_000

    def test_parallel_base_cases(self):
        spec = get_entry("t2375_lower").spec
        result = _time("certify t2375_lower x4", lambda: certify_bound(spec, EngineConfig(workers=4)), runs=1)
        assert result.median_ms < 60_000

    def test_interval_checks_throughput(self):
        a = get_entry("robbins_lower").spec.a
        result = _time("strict_compare x200", lambda: [strict_compare(n, a, "lower") for n in range(1, 201)],
                       items=200, runs=1)
        assert result.items_per_second > 20


if __name__ == "__main__":
    print("Starting Stirling bound performance benchmarks")
    print("=" * 60)
    benchmarks = PerformanceBenchmarks(runs=3)
    suite = benchmarks.run()
    benchmarks.print_summary(suite)
    benchmarks.save_results(suite)
    print("\nBenchmark completed successfully!")
