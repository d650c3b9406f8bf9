"""
Tests pour le benchmark - collecte des temps, CSV et graphiques

Ce module teste :
- Chronométrage des scénarios et comparaison aux limites
- Écriture du CSV des temps
- Génération des PNG (temps, aperçu de maillage)
"""

import os
import shutil
import tempfile
import unittest
from pathlib import Path

import numpy as np
import pandas as pd

from benchmark import get_available_scenarios
from benchmark.collector import BenchmarkCollector, BenchmarkResult
from benchmark.runner import BenchmarkRunner
from benchmark.visualization.graphs import GraphGenerator, plot_mesh_projection
from Synthesis.MeshIO import MeshData


FAST_SCENARIOS = ['exponential', 'weyl', 'evenness_gate']


class TestBenchmarkCollector(unittest.TestCase):
    """Tests pour la collecte des temps"""

    def setUp(self):
        """Configuration initiale"""
        self.test_dir = tempfile.mkdtemp()

    def tearDown(self):
        """Nettoyage"""
        if os.path.exists(self.test_dir):
            shutil.rmtree(self.test_dir)

    def test_available_scenarios(self):
        self.assertIn('rotation_torus', get_available_scenarios())
        self.assertIn('cone_cross_check', get_available_scenarios())

    def test_within_limit(self):
        fast = BenchmarkResult('weyl', 0.1, 0.05, 1.0, 3, True)
        slow = BenchmarkResult('weyl', 2.0, 1.5, 1.0, 3, True)
        self.assertTrue(fast.within_limit)
        self.assertFalse(slow.within_limit)

    def test_measure_writes_csv(self):
        collector = BenchmarkCollector(self.test_dir, iterations=1)
        collector.measure_all(FAST_SCENARIOS)
        path = collector.write_csv()
        self.assertTrue(path.exists())
        df = pd.read_csv(path)
        self.assertEqual(list(df['scenario']), FAST_SCENARIOS)
        self.assertTrue(df['checks_passed'].all())
        self.assertIn('within_limit', df.columns)
        self.assertEqual(set(collector.summary()), set(FAST_SCENARIOS))

    def test_unknown_scenario_rejected(self):
        collector = BenchmarkCollector(self.test_dir, iterations=1)
        with self.assertRaises(KeyError):
            collector.measure('does-not-exist')


class TestBenchmarkVisualization(unittest.TestCase):
    """Tests des graphiques PNG"""

    def setUp(self):
        """Configuration initiale"""
        self.test_dir = tempfile.mkdtemp()

    def tearDown(self):
        """Nettoyage"""
        if os.path.exists(self.test_dir):
            shutil.rmtree(self.test_dir)

    def test_runtime_graph_png_generated(self):
        df = pd.DataFrame([
            {'scenario': 'weyl', 'mean_time_s': 0.02, 'min_time_s': 0.01, 'limit_s': 1.0,
             'iterations': 1, 'checks_passed': True, 'within_limit': True},
            {'scenario': 'rotation_torus', 'mean_time_s': 12.0, 'min_time_s': 11.0, 'limit_s': 10.0,
             'iterations': 1, 'checks_passed': True, 'within_limit': False}
        ])
        path = GraphGenerator(self.test_dir).generate_all_graphs(df)
        self.assertTrue(Path(path).exists())
        self.assertGreater(Path(path).stat().st_size, 0)

    def test_mesh_projection_png(self):
        vertices = np.random.default_rng(0).standard_normal((12, 4))
        mesh = MeshData(vertices=vertices, normals=np.zeros((0, 4)), faces=np.zeros((0, 3), dtype=int),
                        ambient_dim=4)
        path = plot_mesh_projection(mesh, Path(self.test_dir) / "preview.png", keep=(0, 2, 3))
        self.assertTrue(path.exists())

    def test_runner_full_suite(self):
        runner = BenchmarkRunner(self.test_dir, iterations=1)
        self.assertTrue(runner.run_full_suite(['weyl']))
        self.assertTrue(runner.csv_path.exists())
        self.assertIsNotNone(runner.graph_path)


if __name__ == '__main__':
    unittest.main()
