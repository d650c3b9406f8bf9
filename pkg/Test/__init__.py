"""
Test - Suite de Tests Complète pour polarsynth

Cette suite de tests couvre tous les aspects du projet :
- Tests unitaires par couche (NumGeo, PolarAction, Isoparametric, Synthesis, Analysis)
- Scénarios d'acceptation de bout en bout
- Tests du benchmark et des graphiques
- Tests de la CLI

Structure des Tests:
├── test_numgeo_core.py        # Types, exponentielle, repères, différences finies
├── test_polar_action.py       # Actions, orbites, cohomogénéité, polarité
├── test_isoparametric.py      # Seconde forme, normales principales, groupe de Weyl
├── test_synthesis.py          # Profils, balayage, rotation, produits tordus, maillages
├── test_analysis.py           # Formes fondamentales, nullité, orbites dans M
├── test_acceptance.py         # Scénarios de référence
├── test_benchmark.py          # Temps, CSV et PNG
└── test_cli.py                # main.py en sous-processus

Usage:
    python -m unittest Test.test_synthesis         # Synthèse seulement
    python -m unittest Test.test_cli               # CLI
    python -m unittest discover Test/              # Tous les tests
"""

from . import test_numgeo_core
from . import test_polar_action
from . import test_isoparametric
from . import test_synthesis
from . import test_analysis
from . import test_acceptance
from . import test_benchmark
from . import test_cli

__all__ = [
    'test_numgeo_core',        # Géométrie numérique de base
    'test_polar_action',       # Actions polaires
    'test_isoparametric',      # Sous-variétés isoparamétriques
    'test_synthesis',          # Synthèse des hypersurfaces
    'test_analysis',           # Diagnostics de courbure
    'test_acceptance',         # Scénarios de bout en bout
    'test_benchmark',          # Benchmark et graphiques
    'test_cli',                # Interface en ligne de commande
]


def run_all_tests():
    """Exécuter tous les tests de la suite"""
    import unittest

    loader = unittest.TestLoader()
    suite = loader.discover('Test', pattern='test_*.py')

    runner = unittest.TextTestRunner(verbosity=2, buffer=True)
    result = runner.run(suite)

    return result.wasSuccessful()


def run_core_tests():
    """Exécuter seulement les tests unitaires (sans CLI ni benchmark)"""
    import unittest

    suite = unittest.TestSuite()
    loader = unittest.TestLoader()
    for module in (test_numgeo_core, test_polar_action, test_isoparametric,
                   test_synthesis, test_analysis):
        suite.addTests(loader.loadTestsFromModule(module))

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    return result.wasSuccessful()
