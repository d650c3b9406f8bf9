# benchmark/runner.py
import logging
from pathlib import Path
from typing import Dict, List, Optional

from benchmark.collector import BenchmarkCollector
from benchmark.visualization.graphs import GraphGenerator

logger = logging.getLogger(__name__)


class BenchmarkRunner:
    """Orchestre la collecte des temps et la génération des graphiques"""

    def __init__(self, output_dir: Path = None, iterations: int = None):
        self.collector = BenchmarkCollector(output_dir, iterations)
        self.output_dir = self.collector.output_dir
        self.csv_path: Optional[Path] = None
        self.graph_path: Optional[Path] = None

    def execute_benchmarks(self, scenarios: List[str] = None) -> Dict[str, bool]:
        print(f"Running scenarios, iterations: {self.collector.iterations}")
        self.collector.measure_all(scenarios)
        self.csv_path = self.collector.write_csv()
        return self.collector.summary()

    def generate_visualizations(self) -> Optional[Path]:
        print("Generating graphs...")
        try:
            self.graph_path = GraphGenerator(self.output_dir).generate_all_graphs(self.collector.to_frame())
        except Exception as e:
            logger.warning(f"Error generating graphs: {e}")
            self.graph_path = None
        return self.graph_path

    def run_full_suite(self, scenarios: List[str] = None, visualize: bool = True) -> bool:
        summary = self.execute_benchmarks(scenarios)
        if visualize:
            self.generate_visualizations()
        for name, ok in summary.items():
            if not ok:
                logger.warning(f"Scenario {name} failed its checks or exceeded its limit")
        print(f"Results in: {self.output_dir}")
        return all(summary.values())


def run_default(output_dir: Path = None, iterations: int = None, scenarios: List[str] = None) -> bool:
    """Exécute toute la suite et renvoie True si chaque scénario passe"""
    return BenchmarkRunner(output_dir, iterations).run_full_suite(scenarios)
