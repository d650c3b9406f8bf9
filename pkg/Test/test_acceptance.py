"""
Tests d'acceptation - scénarios de référence de bout en bout

Chaque scénario enregistré dans benchmark.scenarios combine plusieurs
modules (exponentielle, cohomogénéité, normales principales, Weyl,
balayage, diagnostics) et renvoie un indicateur global 'passed'.
"""

import unittest

from benchmark.scenarios import SCENARIOS, ScenarioRunner


class TestAcceptanceScenarios(unittest.TestCase):
    """Tests des scénarios de référence"""

    def setUp(self):
        """Configuration initiale"""
        self.runner = ScenarioRunner()

    def test_every_scenario_passes(self):
        for name in self.runner.get_available_scenarios():
            with self.subTest(scenario=name):
                outcome = self.runner.run(name)
                self.assertTrue(outcome['passed'], f"{name}: {outcome}")

    def test_weyl_orders(self):
        outcome = SCENARIOS['weyl']()
        self.assertEqual(outcome['orders'], {'sphere': 2, 'torus': 4, 'rotation_model': 2})

    def test_evenness_gate_orders(self):
        """1+x^3 échoue à l'ordre 3, les graphes pairs passent"""
        outcome = SCENARIOS['evenness_gate']()
        self.assertEqual(outcome['first_failures']['1+x^3'], 3)
        self.assertIsNone(outcome['first_failures']['cos'])
        self.assertTrue(outcome['synthesis_blocked'])

    def test_metric_identity_rejects_perturbation(self):
        outcome = SCENARIOS['metric_identity']()
        self.assertTrue(outcome['perturbed_rejected'])
        self.assertLess(outcome['max_relative_error'], 1e-4)

    def test_unknown_scenario(self):
        with self.assertRaises(ValueError):
            self.runner.run('does-not-exist')


if __name__ == '__main__':
    unittest.main()
