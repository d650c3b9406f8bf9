"""
Tests unitaires pour Synthesis - profils, balayage, rotation, produits tordus, maillages

Ce module teste :
- Échantillonnage des profils (immersion, fermeture)
- Balayage G(L): ordre des échantillons, équivariance, transversalité, tranche
- Invariance de Weyl et porte de régularité à l'axe
- Hypersurfaces de rotation, multi-rotation et produits tordus
- Écriture et relecture des maillages et métadonnées
"""

import os
import shutil
import tempfile
import unittest
from pathlib import Path

import numpy as np

from NumGeo.errors import (
    ImmersionError, ProfileSmoothnessError, RealizabilityError, MetadataError, ConfigParseError
)
from NumGeo.LinAlg import complement
from PolarAction.Action import torus_action, rotation_action
from Isoparametric.WeylGroup import weyl_group_for_section
from Synthesis.Profile import ProfileHypersurface, circle_profile, uniform_grid
from Synthesis.Sweep import (
    GroupSampling, SweptHypersurface, group_elements, sweep, equivariance_report,
    transversality_check, check_weyl_invariance, section_slice
)
from Synthesis.Rotation import (
    block_section, fiber_elements, boundary_smoothness_check, block_sweep, rotation_hypersurface,
    multi_rotational
)
from Synthesis.Warped import (
    WarpedProductSpec, warped_metric_eval, realizability_report, metric_report, warped_to_rotation
)
from Synthesis.MeshIO import (
    write_mesh, read_mesh, write_metadata, read_metadata, projected_obj_text, mesh_patches,
    metadata_path, MESH_HEADER
)
from config import SYNTHESIS_CONFIG


def sphere_chart(u):
    return np.array([2.0 * np.cos(u[0]), 2.0 * np.sin(u[0])])


def small_sphere():
    grid = (uniform_grid(0.0, np.pi, 13, periodic=False),)
    return rotation_hypersurface(1, 3, sphere_chart, grid, (False,), fiber_resolution=(5, 8),
                                 label="sphere")


class TestProfile(unittest.TestCase):
    """Tests pour l'échantillonnage des profils"""

    def setUp(self):
        """Configuration initiale"""
        self.section = block_section([0, 2, 2])

    def test_uniform_grid_excludes_periodic_endpoint(self):
        self.assertEqual(len(uniform_grid(0.0, 1.0, 4, periodic=True)), 4)
        self.assertLess(uniform_grid(0.0, 1.0, 4, periodic=True)[-1], 1.0)
        self.assertEqual(uniform_grid(0.0, 1.0, 4, periodic=False)[-1], 1.0)

    def test_circle_profile(self):
        L = circle_profile(self.section, [0.0, 0.0], 1.5, resolution=16)
        self.assertEqual(L.grid_shape, (16,))
        self.assertTrue(L.closed)
        np.testing.assert_allclose(np.linalg.norm(L.flat_coords, axis=1), 1.5)

    def test_constant_chart_is_not_an_immersion(self):
        with self.assertRaises(ImmersionError):
            ProfileHypersurface.from_function(self.section, lambda u: np.array([1.0, 1.0]),
                                              (np.linspace(0.0, 1.0, 5),), (False,))

    def test_open_curve_flagged_periodic_fails_closure(self):
        with self.assertRaises(ImmersionError):
            ProfileHypersurface.from_function(self.section, lambda u: np.array([u[0], 1.0]),
                                              (uniform_grid(0.0, 1.0, 8, True),), (True,))

    def test_parameter_count_must_match_section(self):
        with self.assertRaises(ValueError):
            ProfileHypersurface.from_function(self.section, lambda u: np.array([u[0], 1.0]),
                                              (np.linspace(0, 1, 3), np.linspace(0, 1, 3)),
                                              (False, False))


class TestSweep(unittest.TestCase):
    """Tests pour le balayage par le groupe"""

    def setUp(self):
        """Configuration initiale"""
        self.action = torus_action(2)
        self.section = block_section([0, 2, 2])
        self.L = circle_profile(self.section, [0.0, 0.0], 1.5, resolution=16)

    def test_sample_order(self):
        """Indice d'échantillon = indice de groupe * nœuds du profil + indice du profil"""
        sampling = GroupSampling(mode="halton", count=8, seed=3)
        mats = group_elements(self.action, sampling).matrices
        M = sweep(self.action, self.L, sampling)
        m = self.L.node_count
        self.assertEqual(M.sample_count, len(mats) * m)
        for g, i in ((0, 0), (2, 5), (len(mats) - 1, m - 1)):
            np.testing.assert_allclose(M.points[g * m + i], mats[g] @ self.L.points[i], atol=1e-12)
            self.assertEqual(M.group_tags[g * m + i], g)
            self.assertEqual(M.profile_tags[g * m + i], i)
        self.assertEqual(len(M.patches), len(mats))

    def test_grid_sampling_single_patch(self):
        M = sweep(self.action, self.L, GroupSampling(mode="grid", count=64))
        self.assertTrue(M.group_grid_complete)
        self.assertEqual(len(M.patches), 1)
        self.assertEqual(M.patches[0].shape, (8, 8, 16))

    def test_sampling_validation(self):
        with self.assertRaises(ValueError):
            GroupSampling(mode="sobol")
        with self.assertRaises(ValueError):
            group_elements(rotation_action(3), GroupSampling(mode="grid", count=27))

    def test_swept_sphere_is_equivariant_and_transversal(self):
        M = sweep(self.action, self.L, GroupSampling(mode="grid", count=256))
        np.testing.assert_allclose(np.linalg.norm(M.points, axis=1), 1.5, atol=1e-12)
        report = equivariance_report(M, self.action, trials=10)
        self.assertTrue(report['passed'])
        self.assertLess(report['max_residual'], report['bound'])
        self.assertTrue(transversality_check(self.section, M)['passed'])
        W = weyl_group_for_section(self.action, self.section)
        self.assertTrue(section_slice(M, self.section, W, self.L, tol=1e-8)['passed'])

    def test_normals_are_unit_and_orthogonal(self):
        M = sweep(self.action, self.L, GroupSampling(mode="halton", count=4))
        for i in np.flatnonzero(M.regular):
            self.assertAlmostEqual(float(np.linalg.norm(M.normals[i])), 1.0, places=10)
            np.testing.assert_allclose(M.tangents[i] @ M.normals[i], 0.0, atol=1e-8)

    def test_normals_orthogonal_to_section_fail_transversality(self):
        """Normales orthogonales à la section: aucune direction de Σ ne quitte T_pM"""
        M = sweep(self.action, self.L, GroupSampling(mode="grid", count=64))
        flat = complement(self.section.frame).basis[0]
        bent = SweptHypersurface.from_points(M.points, self.action,
                                             normals=np.tile(flat, (M.sample_count, 1)),
                                             patches=M.patches, grid_complete=True)
        report = transversality_check(self.section, bent)
        self.assertFalse(report['passed'])
        self.assertGreater(report['checked'], 0)
        self.assertEqual(report['failure_count'], report['checked'])
        self.assertAlmostEqual(report['min_margin'], 0.0, places=12)

    def test_wrong_profile_fails_section_slice(self):
        M = sweep(self.action, self.L, GroupSampling(mode="grid", count=64))
        W = weyl_group_for_section(self.action, self.section)
        other = circle_profile(self.section, [0.0, 0.0], 1.2, resolution=16)
        report = section_slice(M, self.section, W, other, tol=1e-8)
        self.assertFalse(report['passed'])
        self.assertAlmostEqual(report['max_deviation'], 0.3, places=8)


class TestWeylInvariance(unittest.TestCase):
    """Tests pour l'invariance de Weyl des profils"""

    def setUp(self):
        """Configuration initiale"""
        self.action = torus_action(2)
        self.section = block_section([0, 2, 2])
        self.W = weyl_group_for_section(self.action, self.section)

    def test_centered_circle_is_invariant(self):
        L = circle_profile(self.section, [0.0, 0.0], 1.0, resolution=32)
        report = check_weyl_invariance(L, self.W)
        self.assertTrue(report['invariant'])
        self.assertEqual(report['order'], 4)

    def test_shifted_circle_is_not_invariant(self):
        """Un cercle décentré de s s'écarte de 2s sous la réflexion"""
        for offset in (0.3, 0.05):
            L = circle_profile(self.section, [offset, 0.0], 1.0, resolution=32)
            report = check_weyl_invariance(L, self.W)
            self.assertFalse(report['invariant'])
            self.assertAlmostEqual(report['max_deviation'], 2.0 * offset, delta=0.2 * offset)


class TestRotation(unittest.TestCase):
    """Tests pour les hypersurfaces de rotation"""

    def test_fiber_elements_grid(self):
        elements = fiber_elements([1, 3], (5, 8))
        self.assertEqual(elements.count, 40)
        self.assertEqual(elements.grid_shape, (5, 8))

    def test_rotation_sphere(self):
        result = small_sphere()
        M = result['swept']
        np.testing.assert_allclose(np.linalg.norm(M.points, axis=1), 2.0, atol=1e-12)
        self.assertEqual(result['weyl'].order, 2)
        self.assertTrue(section_slice(M, result['section'], result['weyl'], result['profile'],
                                      tol=1e-8)['passed'])
        self.assertTrue(all(r['passed'] for r in result['smoothness']))

    def test_boundary_smoothness_orders(self):
        self.assertIsNone(boundary_smoothness_check(lambda x: 1.0 + x * x)['first_failure_order'])
        self.assertIsNone(boundary_smoothness_check(np.cos)['first_failure_order'])
        self.assertEqual(boundary_smoothness_check(lambda x: 1.0 + x ** 3)['first_failure_order'], 3)

    def test_cubic_profile_blocked_at_axis(self):
        with self.assertRaises(ProfileSmoothnessError):
            rotation_hypersurface(1, 3, lambda u: np.array([1.0 + u[0] ** 3, u[0]]),
                                  (np.linspace(0.0, 1.0, 9),), (False,), fiber_resolution=(3, 4))

    def test_profile_must_stay_in_half_space(self):
        with self.assertRaises(ValueError):
            rotation_hypersurface(1, 3, lambda u: np.array([u[0], u[0] - 0.5]),
                                  (np.linspace(0.0, 1.0, 5),), (False,), fiber_resolution=(3, 4))

    def test_axis_crossings_between_nodes(self):
        """Cercle complet sans nœud sur l'axe: croisements localisés en u = 0 et π"""
        grid = (uniform_grid(0.1, 0.1 + 2.0 * np.pi, 8, periodic=True),)
        result = block_sweep([1, 3], lambda u: np.array([2.0 * np.cos(u[0]), 2.0 * np.sin(u[0])]),
                             grid, (True,), half_space=False, fiber_resolution=(3, 4),
                             invariance_tol=0.5)
        parameters = [r['parameter'] for r in result['smoothness']]
        self.assertEqual(len(parameters), 2)
        np.testing.assert_allclose(sorted(np.cos(parameters)), [-1.0, 1.0], atol=1e-10)
        np.testing.assert_allclose(np.sin(parameters), 0.0, atol=1e-10)
        self.assertTrue(all(r['passed'] for r in result['smoothness']))

    def test_cubic_crossing_between_nodes_blocked(self):
        with self.assertRaises(ProfileSmoothnessError) as ctx:
            block_sweep([1, 3], lambda u: np.array([1.0 + u[0] ** 3, u[0]]),
                        (np.linspace(-1.0, 1.0, 8),), (False,), half_space=False,
                        fiber_resolution=(3, 4), invariance_tol=10.0)
        self.assertAlmostEqual(ctx.exception.report['parameter'], 0.0, places=12)
        self.assertEqual(ctx.exception.report['first_failure_order'], 3)

    def test_multi_rotational_product_of_circles(self):
        quarter = (uniform_grid(0.0, 0.5 * np.pi, 9, periodic=False),)
        M = multi_rotational([0, 2, 2], [1.0, 2.0],
                             lambda u: np.array([np.cos(u[0]), np.sin(u[0])]), quarter, (False,),
                             fiber_resolution=(1, 8))
        self.assertEqual(M.metadata['block_dims'], [0, 2, 2])
        self.assertEqual(M.metadata['radii'], [1.0, 2.0])
        # points satisfy x1^2 + x2^2 + (x3^2 + x4^2) / 4 = 1
        values = (M.points[:, 0] ** 2 + M.points[:, 1] ** 2
                  + (M.points[:, 2] ** 2 + M.points[:, 3] ** 2) / 4.0)
        np.testing.assert_allclose(values, 1.0, atol=1e-12)


class TestWarped(unittest.TestCase):
    """Tests pour les produits tordus"""

    def make_spec(self, scale):
        grid = (uniform_grid(0.0, 2.0 * np.pi, 12, periodic=True),)
        chart = lambda u: np.array([np.cos(u[0]), 3.0 + np.sin(u[0])])
        return WarpedProductSpec(base_chart=chart, base_grid=grid,
                                 rho=lambda u: scale * float(chart(u)[-1]),
                                 fiber_dim=2, periodic=(True,))

    def test_realizable_warped_product(self):
        result = warped_to_rotation(self.make_spec(1.0), fiber_resolution=(5, 8))
        self.assertTrue(result['realizability']['passed'])
        self.assertTrue(result['metric_report']['passed'])
        self.assertEqual(result['swept'].ambient_dim, 4)

    def test_perturbed_warping_rejected(self):
        spec = self.make_spec(1.1)
        self.assertFalse(realizability_report(spec)['passed'])
        with self.assertRaises(RealizabilityError):
            warped_to_rotation(spec, fiber_resolution=(5, 8))

    def test_warped_metric_eval(self):
        """Base de métrique 1, ρ(0) = 3: <u, u'> + 9 <v, v'>"""
        spec = self.make_spec(1.0)
        v = np.array([0.0, 1.0, 0.0])
        self.assertAlmostEqual(warped_metric_eval(spec, [2.0], [3.0], v, v, [0.0]), 15.0, places=6)
        self.assertAlmostEqual(warped_metric_eval(spec, [2.0], [3.0], v, [0.0, 0.0, 1.0], [0.0]),
                               6.0, places=6)
        self.assertAlmostEqual(warped_metric_eval(spec, [0.0], [0.0], v, v, [0.5 * np.pi]),
                               16.0, places=6)

    def test_metric_report_tolerance(self):
        spec = self.make_spec(1.0)
        report = metric_report(spec)
        self.assertEqual(report['tolerance'], SYNTHESIS_CONFIG['metric_tol'])
        self.assertTrue(report['passed'])
        self.assertFalse(metric_report(spec, tol=0.0)['passed'])

    def test_spec_validation(self):
        with self.assertRaises(ValueError):
            WarpedProductSpec(base_chart=lambda u: np.array([0.0, 1.0]),
                              base_grid=(np.linspace(0, 1, 3),), rho=lambda u: 1.0, fiber_dim=0)
        with self.assertRaises(ValueError):
            WarpedProductSpec(base_chart=lambda u: np.array([u[0], 1.0]),
                              base_grid=(np.linspace(0, 1, 3),), rho=lambda u: -1.0, fiber_dim=2)


class TestMeshIO(unittest.TestCase):
    """Tests pour l'écriture des maillages"""

    def setUp(self):
        """Configuration initiale"""
        self.test_dir = tempfile.mkdtemp()
        self.result = small_sphere()
        self.M = self.result['swept']
        self.path = Path(self.test_dir) / "sphere.obj"

    def tearDown(self):
        """Nettoyage"""
        if os.path.exists(self.test_dir):
            shutil.rmtree(self.test_dir)

    def test_write_and_read(self):
        write_mesh(self.path, self.M, name="sphere")
        with open(self.path, 'r', encoding='utf-8') as f:
            self.assertEqual(f.readline().strip(), MESH_HEADER)
        mesh = read_mesh(self.path)
        self.assertEqual(mesh.ambient_dim, 4)
        np.testing.assert_allclose(mesh.vertices, self.M.points, atol=1e-10)
        self.assertGreater(len(mesh.faces), 0)
        self.assertLess(int(mesh.faces.max()), self.M.sample_count)
        leftovers = [p for p in os.listdir(self.test_dir) if p.endswith('.tmp')]
        self.assertEqual(leftovers, [])

    def test_metadata_sidecar(self):
        write_mesh(self.path, self.M)
        with self.assertRaises(MetadataError):
            read_metadata(self.path)
        write_metadata(self.path, {'patches': [p.to_dict() for p in self.M.patches],
                                   'group_grid_complete': True})
        self.assertEqual(metadata_path(self.path).name, "sphere.meta.json")
        patches, complete = mesh_patches(read_metadata(self.path))
        self.assertTrue(complete)
        self.assertEqual(patches[0].shape, self.M.patches[0].shape)

    def test_malformed_line_reports_line_number(self):
        self.path.write_text("# polarsynth mesh\nv 0 0 0 1\nv 0 x 0 1\n", encoding='utf-8')
        with self.assertRaises(ConfigParseError) as ctx:
            read_mesh(self.path)
        self.assertIn(":3:", str(ctx.exception))

    def test_projection(self):
        write_mesh(self.path, self.M)
        mesh = read_mesh(self.path)
        text = projected_obj_text(mesh, keep=(1, 2, 3))
        first = next(line for line in text.splitlines() if line.startswith('v '))
        self.assertEqual(len(first.split()), 4)
        with self.assertRaises(ConfigParseError):
            projected_obj_text(mesh, keep=(0, 1, 7))


if __name__ == '__main__':
    unittest.main()
