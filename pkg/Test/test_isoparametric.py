"""
Tests unitaires pour Isoparametric - seconde forme, normales principales, groupe de Weyl

Ce module teste :
- Seconde forme fondamentale des orbites (forme close et différences finies)
- Décomposition en normales principales et courbures sectionnelles
- Hyperplans focaux et fermeture du groupe de Weyl
"""

import unittest

import numpy as np

from NumGeo.errors import PointOrbitError, TangentialVectorError, WeylGroupOverflowError
from PolarAction.Action import rotation_action, rotation_model_action, torus_action
from PolarAction.Polarity import regular_section
from Isoparametric.SecondForm import (
    orbit_second_ff, orbit_second_ff_fd, shape_operator, commutation_residual
)
from Isoparametric.PrincipalNormals import (
    principal_normals, orbit_decomposition, gauss_curvature_table, check_space_form_relations,
    constant_curvature, orbit_geometry, check_transported_normals
)
from Isoparametric.WeylGroup import (
    FocalHyperplane, focal_hyperplanes, weyl_group, permutation_deviation, weyl_group_at,
    weyl_group_for_section, invariant_hyperplane_reduction
)


class TestSecondForm(unittest.TestCase):
    """Tests pour la seconde forme fondamentale des orbites"""

    def test_sphere_orbit_closed_form(self):
        """Sphère de rayon r: α(X, X) = -p / r^2 pour X unitaire"""
        p = np.array([0.0, 2.0, 0.0])
        ff = orbit_second_ff(rotation_action(3), p)
        self.assertEqual(ff.orbit_dim, 2)
        np.testing.assert_allclose(ff.evaluate([1.0, 0.0], [1.0, 0.0]), -p / 4.0, atol=1e-12)
        np.testing.assert_allclose(ff.evaluate([1.0, 0.0], [0.0, 1.0]), 0.0, atol=1e-12)

    def test_finite_difference_oracle_agrees(self):
        p = np.array([1.0, 0.5, 2.0, -0.3])
        exact = orbit_second_ff(torus_action(2), p)
        approx = orbit_second_ff_fd(torus_action(2), p, 1e-4)
        np.testing.assert_allclose(approx.values, exact.values, atol=1e-6)

    def test_shape_operators_match_finite_differences(self):
        """Opérateurs de forme exact et différences finies sur 20 normales aléatoires"""
        p = np.array([1.0, 0.5, 2.0, -0.3])
        exact = orbit_second_ff(torus_action(2), p)
        approx = orbit_second_ff_fd(torus_action(2), p, 1e-4)
        rng = np.random.default_rng(11)
        for _ in range(20):
            xi = rng.standard_normal(exact.normal.rank) @ exact.normal.basis
            xi /= np.linalg.norm(xi)
            np.testing.assert_allclose(shape_operator(approx, xi), shape_operator(exact, xi),
                                       atol=1e-5)

    def test_point_orbit_has_no_form(self):
        with self.assertRaises(PointOrbitError):
            orbit_second_ff(rotation_action(3), [0.0, 0.0, 0.0])

    def test_shape_operator_rejects_tangent_vector(self):
        ff = orbit_second_ff(rotation_action(3), [1.0, 0.0, 0.0])
        with self.assertRaises(TangentialVectorError):
            shape_operator(ff, [0.0, 1.0, 0.0])
        A = shape_operator(ff, [1.0, 0.0, 0.0])
        np.testing.assert_allclose(A, -np.eye(2), atol=1e-12)

    def test_flat_normal_bundle(self):
        ff = orbit_second_ff(rotation_model_action(1, 3), [0.4, 1.0, 1.0, 0.0])
        self.assertLess(commutation_residual(ff), 1e-10)


class TestPrincipalNormals(unittest.TestCase):
    """Tests pour les normales principales"""

    def test_torus_orbit_normals(self):
        """Tore plat: deux normales de normes 1/r1 et 1/r2, orthogonales"""
        d = orbit_decomposition(torus_action(2), [2.0, 0.0, 0.5, 0.0])
        self.assertEqual(d.count, 2)
        self.assertEqual(d.multiplicities, [1, 1])
        norms = [float(np.linalg.norm(eta)) for eta in d.normals]
        np.testing.assert_allclose(norms, [2.0, 0.5], atol=1e-10)
        K = gauss_curvature_table(d)
        self.assertAlmostEqual(K[0, 1], 0.0, places=10)
        self.assertEqual(orbit_geometry(d), "product-of-circles")

    def test_round_sphere(self):
        d = orbit_decomposition(rotation_action(4), [0.0, 0.0, 0.0, 2.0])
        self.assertEqual(d.count, 1)
        self.assertEqual(d.multiplicities, [3])
        self.assertAlmostEqual(constant_curvature(d), 0.25, places=10)
        self.assertEqual(orbit_geometry(d), "round-sphere")

    def test_space_form_relations_in_euclidean_space(self):
        d = orbit_decomposition(torus_action(3), [1.0, 0.0, 2.0, 0.0, 3.0, 0.0])
        self.assertTrue(check_space_form_relations(d, 0.0)['passed'])
        self.assertFalse(check_space_form_relations(d, 1.0)['passed'])

    def test_fd_decomposition_matches(self):
        p = np.array([1.0, 0.0, 3.0, 0.0])
        d = principal_normals(orbit_second_ff_fd(torus_action(2), p, 1e-4))
        norms = sorted(float(np.linalg.norm(eta)) for eta in d.normals)
        np.testing.assert_allclose(norms, [1.0 / 3.0, 1.0], atol=1e-6)

    def test_transported_normals(self):
        result = check_transported_normals(torus_action(2), [1.0, 0.3, 2.0, -0.4], samples=3)
        self.assertTrue(result['passed'])
        self.assertLess(result['max_deviation'], 1e-8)


class TestWeylGroup(unittest.TestCase):
    """Tests pour le groupe de Weyl"""

    def test_orders(self):
        self.assertEqual(weyl_group_at(rotation_action(3), [2.0, 0.0, 0.0])['weyl'].order, 2)
        self.assertEqual(weyl_group_at(torus_action(2), [1.0, 0.0, 2.0, 0.0])['weyl'].order, 4)
        model = weyl_group_at(rotation_model_action(1, 3), [0.5, 2.0, 0.0, 0.0])
        self.assertEqual(model['weyl'].order, 2)

    def test_weyl_permutes_hyperplanes(self):
        data = weyl_group_at(torus_action(2), [1.0, 0.0, 2.0, 0.0])
        self.assertLess(permutation_deviation(data['weyl'], data['hyperplanes']), 1e-10)

    def test_dihedral_closure(self):
        """Deux réflexions à π/3 engendrent un groupe d'ordre 6"""
        hyperplanes = [FocalHyperplane([1.0, 0.0]),
                       FocalHyperplane([np.cos(np.pi / 3), np.sin(np.pi / 3)])]
        self.assertEqual(weyl_group(hyperplanes).order, 6)

    def test_parallel_hyperplanes_overflow(self):
        """Hyperplans parallèles: groupe infini, arrêt au plafond"""
        hyperplanes = [FocalHyperplane([1.0, 0.0], 1.0), FocalHyperplane([-1.0, 0.0], 1.0)]
        with self.assertRaises(WeylGroupOverflowError):
            weyl_group(hyperplanes, cap=32)

    def test_focal_hyperplanes_of_sphere(self):
        d = orbit_decomposition(rotation_action(3), [2.0, 0.0, 0.0])
        hyperplanes = focal_hyperplanes(d)
        self.assertEqual(len(hyperplanes), 1)
        reflection = hyperplanes[0].reflection()
        # coordinates are offsets from p: the orbit point goes to the antipode, offset -2p
        p = d.normal_frame.coordinates([2.0, 0.0, 0.0])
        np.testing.assert_allclose(reflection.apply(np.zeros(1)), -2.0 * p, atol=1e-12)

    def test_hyperplane_reduction_of_rotation_model(self):
        """Orbite S^2 de I_1 ⊕ SO(3): contenue dans l'hyperplan affine x1 = 0.7"""
        data = weyl_group_at(rotation_model_action(1, 3), [0.7, 0.0, 2.0, 0.0])
        xi = invariant_hyperplane_reduction(data['decomposition'], data['weyl'])
        self.assertIsNotNone(xi)
        np.testing.assert_allclose(np.abs(xi), [1.0, 0.0, 0.0, 0.0], atol=1e-10)

    def test_no_hyperplane_reduction(self):
        for action, p in ((torus_action(2), [1.0, 0.0, 2.0, 0.0]),
                          (rotation_action(3), [0.0, 0.0, 2.0])):
            data = weyl_group_at(action, p)
            self.assertIsNone(invariant_hyperplane_reduction(data['decomposition'], data['weyl']))

    def test_weyl_group_for_section_is_linear(self):
        """Sur des coordonnées linéaires de la section, le groupe fixe l'origine"""
        action = torus_action(2)
        W = weyl_group_for_section(action, regular_section(action))
        self.assertEqual(W.order, 4)
        for g in W.elements:
            np.testing.assert_allclose(g.translation, 0.0, atol=1e-10)


if __name__ == '__main__':
    unittest.main()
