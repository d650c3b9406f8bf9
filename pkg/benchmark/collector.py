"""
benchmark/collector.py - Collecte des temps d'exécution des scénarios

Chaque scénario est exécuté `iterations` fois; le temps moyen et le temps
minimal sont comparés à la limite configurée puis écrits en CSV.
"""

import logging
import statistics
import time
from dataclasses import dataclass, asdict
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd

from benchmark.scenarios import ScenarioRunner
from config import BENCHMARK_CONFIG

logger = logging.getLogger(__name__)


@dataclass
class BenchmarkResult:
    scenario: str
    mean_time_s: float
    min_time_s: float
    limit_s: float
    iterations: int
    checks_passed: bool

    @property
    def within_limit(self) -> bool:
        return self.mean_time_s <= self.limit_s


class BenchmarkCollector:
    """
    Collecteur des métriques de temps des scénarios
    """

    def __init__(self, output_dir: Path = None, iterations: int = None):
        self.output_dir = Path(output_dir or BENCHMARK_CONFIG['results_dir'])
        self.csv_dir = self.output_dir / "csv"
        self.csv_dir.mkdir(parents=True, exist_ok=True)
        self.iterations = BENCHMARK_CONFIG['iterations'] if iterations is None else iterations
        self.scenario_runner = ScenarioRunner()
        self.results: List[BenchmarkResult] = []

    def measure(self, name: str) -> BenchmarkResult:
        """Chronomètre un scénario sur plusieurs itérations"""
        limit = BENCHMARK_CONFIG['runtime_limits_s'][name]
        times = []
        passed = True
        for _ in range(self.iterations):
            start = time.perf_counter()
            outcome = self.scenario_runner.run(name)
            times.append(time.perf_counter() - start)
            passed = passed and bool(outcome['passed'])
        result = BenchmarkResult(scenario=name, mean_time_s=statistics.mean(times),
                                 min_time_s=min(times), limit_s=limit,
                                 iterations=self.iterations, checks_passed=passed)
        logger.info(f"{name}: {result.mean_time_s:.3f} s (limit {limit:.1f} s), "
                    f"checks {'passed' if passed else 'FAILED'}")
        self.results.append(result)
        return result

    def measure_all(self, scenarios: Optional[List[str]] = None) -> List[BenchmarkResult]:
        for name in scenarios or self.scenario_runner.get_available_scenarios():
            self.measure(name)
        return self.results

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for r in self.results:
            row = asdict(r)
            row['within_limit'] = r.within_limit
            rows.append(row)
        return pd.DataFrame(rows)

    def write_csv(self, filename: str = "scenario_runtimes.csv") -> Path:
        """Sauvegarde les résultats en CSV"""
        path = self.csv_dir / filename
        self.to_frame().to_csv(path, index=False)
        logger.info(f"CSV saved: {path}")
        return path

    def summary(self) -> Dict[str, bool]:
        return {r.scenario: r.checks_passed and r.within_limit for r in self.results}
