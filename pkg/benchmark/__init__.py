"""
benchmark - Chronométrage des scénarios de référence de polarsynth

Mesure chaque scénario, compare aux limites de BENCHMARK_CONFIG et trace
le graphique temps/limite.
"""

__version__ = "1.0.0"
__description__ = "Runtime benchmarks for polar-action hypersurface synthesis"

from .scenarios import ScenarioRunner, SCENARIOS
from .collector import BenchmarkCollector, BenchmarkResult
from .runner import BenchmarkRunner, run_default

__all__ = [
    'ScenarioRunner',
    'SCENARIOS',
    'BenchmarkCollector',
    'BenchmarkResult',
    'BenchmarkRunner',
    'run_benchmarks',
    'get_available_scenarios',
    '__version__',
    '__description__'
]


def run_benchmarks(output_dir=None, iterations=None, scenarios=None, verbose=False):
    """
    Fonction principale pour lancer les benchmarks

    Returns:
        bool: Succès de tous les scénarios
    """
    if verbose:
        print("Demarrage des benchmarks...")
    return run_default(output_dir, iterations, scenarios)


def get_available_scenarios():
    return ScenarioRunner().get_available_scenarios()
