"""
Tests unitaires pour NumGeo - types, algèbre linéaire et coordonnées sphériques

Ce module teste :
- Validation des générateurs antisymétriques et des rotations
- Exponentielle de matrices antisymétriques
- Orthonormalisation, complément et noyau
- Grilles hypersphériques et éléments de fibre
- Stencils de différences finies
"""

import unittest

import numpy as np

from NumGeo.errors import NonSkewError, DegenerateFrameError, GeometryError, ConfigParseError
from NumGeo.Types import SkewMat, OrthoMat, Frame, as_vec
from NumGeo.LinAlg import (
    exp_skew, bracket, so_basis, orthonormalize, complement, project, span_residual, kernel_frame
)
from NumGeo.Spherical import (
    hyperspherical_point, hyperspherical_jacobian, hyperspherical_grid, fiber_element
)
from NumGeo.FiniteDiff import fd_weights, derivative_1d, jacobian, hessian


class TestValueTypes(unittest.TestCase):
    """Tests pour les types SkewMat, OrthoMat et Frame"""

    def test_skew_rejects_symmetric(self):
        """Test rejet d'une matrice non antisymétrique"""
        with self.assertRaises(NonSkewError):
            SkewMat(np.eye(3))

    def test_skew_rejects_non_square(self):
        with self.assertRaises(NonSkewError):
            SkewMat(np.zeros((2, 3)))

    def test_errors_are_value_errors(self):
        """Les erreurs du domaine restent des ValueError"""
        self.assertTrue(issubclass(NonSkewError, ValueError))
        self.assertEqual(ConfigParseError("x").category, "usage")
        self.assertEqual(GeometryError("x").category, "unexpected")

    def test_ortho_rejects_reflection(self):
        """Test rejet d'une réflexion (déterminant -1)"""
        with self.assertRaises(ValueError):
            OrthoMat(np.diag([1.0, -1.0]))

    def test_ortho_compose_and_apply(self):
        R = exp_skew(so_basis(2)[0], np.pi / 2)
        v = R.compose(R).apply([1.0, 0.0])
        np.testing.assert_allclose(v, [-1.0, 0.0], atol=1e-12)

    def test_frame_rejects_non_orthonormal(self):
        with self.assertRaises(DegenerateFrameError):
            Frame(np.array([[1.0, 0.0], [1.0, 1.0]]), 2)

    def test_frame_coordinates_round_trip(self):
        F = Frame.standard(4, [0, 2])
        v = F.from_coordinates([2.0, -1.0])
        np.testing.assert_allclose(v, [2.0, 0.0, -1.0, 0.0])
        self.assertTrue(F.contains(v))
        self.assertFalse(F.contains([0.0, 1.0, 0.0, 0.0]))

    def test_as_vec_validation(self):
        with self.assertRaises(ValueError):
            as_vec([1.0, np.nan])
        with self.assertRaises(ValueError):
            as_vec([1.0, 2.0], dim=3)


class TestLinAlg(unittest.TestCase):
    """Tests pour l'exponentielle et les repères orthonormés"""

    def setUp(self):
        """Configuration initiale"""
        self.rng = np.random.default_rng(7)

    def test_exp_skew_is_rotation(self):
        """exp(A) est orthogonale de déterminant 1 pour A aléatoire"""
        for dim in (2, 3, 5, 8):
            B = self.rng.standard_normal((dim, dim))
            R = exp_skew(B - B.T).entries
            np.testing.assert_allclose(R.T @ R, np.eye(dim), atol=1e-10)
            self.assertAlmostEqual(np.linalg.det(R), 1.0, places=8)

    def test_exp_skew_one_parameter_law(self):
        B = self.rng.standard_normal((4, 4))
        A = B - B.T
        lhs = exp_skew(A, 0.3).entries @ exp_skew(A, -0.7).entries
        np.testing.assert_allclose(lhs, exp_skew(A, -0.4).entries, atol=1e-10)

    def test_exp_skew_large_time(self):
        """t = 1e3: la rotation reste orthogonale et conserve la norme"""
        B = self.rng.standard_normal((8, 8))
        R = exp_skew(B - B.T, 1e3).entries
        np.testing.assert_allclose(R.T @ R, np.eye(8), atol=1e-12)
        self.assertAlmostEqual(np.linalg.det(R), 1.0, places=10)
        for v in self.rng.standard_normal((5, 8)):
            self.assertAlmostEqual(float(np.linalg.norm(R @ v)), float(np.linalg.norm(v)), places=10)

    def test_exp_skew_plane_rotation(self):
        R = exp_skew(so_basis(2)[0], np.pi / 3).entries
        np.testing.assert_allclose(R @ [1.0, 0.0], [0.5, np.sqrt(3) / 2], atol=1e-12)

    def test_so_basis_brackets(self):
        """[E12, E23] = ±E13 dans so(3)"""
        E12, E13, E23 = so_basis(3)
        C = bracket(E12, E23)
        self.assertAlmostEqual(abs(float(np.sum(C * E13))) / 2.0, 1.0)

    def test_orthonormalize_drops_dependent(self):
        F = orthonormalize([[1.0, 0.0, 0.0], [2.0, 0.0, 0.0], [1.0, 1.0, 0.0]])
        self.assertEqual(F.rank, 2)
        np.testing.assert_allclose(F.basis @ F.basis.T, np.eye(2), atol=1e-12)

    def test_orthonormalize_empty_needs_dim(self):
        with self.assertRaises(ValueError):
            orthonormalize([])
        self.assertEqual(orthonormalize([], ambient_dim=3).rank, 0)

    def test_complement_and_projection(self):
        F = Frame.standard(3, [0])
        C = complement(F)
        self.assertEqual(C.rank, 2)
        v = np.array([1.0, 2.0, 3.0])
        np.testing.assert_allclose(project(v, F) + project(v, C), v, atol=1e-12)

    def test_complement_twice_is_identity(self):
        F = orthonormalize(self.rng.standard_normal((2, 5)))
        C = complement(F)
        self.assertEqual(C.rank, 3)
        np.testing.assert_allclose(C.basis @ F.basis.T, 0.0, atol=1e-12)
        self.assertLess(span_residual(complement(C), F), 1e-12)

    def test_span_residual(self):
        F = Frame.standard(3, [0, 1])
        G = orthonormalize([[1.0, 1.0, 0.0], [1.0, -1.0, 0.0]])
        self.assertLess(span_residual(F, G), 1e-12)
        self.assertGreater(span_residual(F, Frame.standard(3, [0, 2])), 0.5)

    def test_kernel_frame(self):
        K = kernel_frame(np.array([[1.0, 1.0, 0.0]]))
        self.assertEqual(K.rank, 2)
        for v in K.basis:
            self.assertAlmostEqual(v[0] + v[1], 0.0, places=12)


class TestSpherical(unittest.TestCase):
    """Tests pour les coordonnées hypersphériques"""

    def test_point_on_unit_sphere(self):
        for phi in ([0.3], [0.3, 1.2], [0.1, 2.0, 4.0]):
            self.assertAlmostEqual(np.linalg.norm(hyperspherical_point(phi)), 1.0, places=12)

    def test_jacobian_matches_finite_differences(self):
        phi = np.array([0.7, 1.1, 2.3])
        J = hyperspherical_jacobian(phi)
        J_fd = jacobian(hyperspherical_point, phi, 1e-6)
        np.testing.assert_allclose(J, J_fd, atol=1e-8)

    def test_grid_shapes(self):
        grids, periodic = hyperspherical_grid(3, 5, 8)
        self.assertEqual(len(grids), 2)
        self.assertEqual(periodic, (False, True))
        self.assertAlmostEqual(grids[0][-1], np.pi)
        grids, _ = hyperspherical_grid(3, 4, 8, include_poles=False)
        self.assertGreater(grids[0][0], 0.0)
        with self.assertRaises(ValueError):
            hyperspherical_grid(1, 3, 3)

    def test_fiber_element_maps_first_axis(self):
        """L'élément de fibre envoie e_offset sur S(φ) dans le bloc"""
        phi = np.array([0.4, 1.3])
        g = fiber_element(5, 2, 3, phi)
        np.testing.assert_allclose(g[:, 2], np.concatenate([[0.0, 0.0], hyperspherical_point(phi)]),
                                   atol=1e-12)
        np.testing.assert_allclose(g.T @ g, np.eye(5), atol=1e-12)


class TestFiniteDiff(unittest.TestCase):
    """Tests pour les stencils de différences finies"""

    def test_weights_exact_on_polynomials(self):
        w = fd_weights(2, 2)
        offsets = np.arange(-2, 3, dtype=float)
        self.assertAlmostEqual(float(w @ offsets ** 2), 2.0, places=10)
        self.assertAlmostEqual(float(w @ offsets ** 3), 0.0, places=10)

    def test_weights_reject_narrow_stencil(self):
        with self.assertRaises(ValueError):
            fd_weights(4, 1)

    def test_derivative_1d(self):
        self.assertAlmostEqual(derivative_1d(np.sin, 0.5, 1, 1e-2), np.cos(0.5), places=8)
        self.assertAlmostEqual(derivative_1d(np.exp, 0.0, 3, 5e-2), 1.0, places=5)

    def test_hessian_of_quadratic(self):
        fn = lambda u: np.array([u[0] ** 2 + 3.0 * u[0] * u[1]])
        H = hessian(fn, np.array([0.2, -0.1]), 1e-3)
        np.testing.assert_allclose(H[:, :, 0], [[2.0, 3.0], [3.0, 0.0]], atol=1e-6)

    def test_convergence_orders(self):
        """Diviser le pas par 2 divise l'erreur par 2^ordre"""
        def observed_order(error, h):
            return float(np.log2(error(h) / error(0.5 * h)))

        u0 = np.array([0.3, 0.4])
        fn = lambda u: np.array([np.sin(u[0]) * np.cos(u[1])])
        exact = np.array([[-np.sin(0.3) * np.cos(0.4), -np.cos(0.3) * np.sin(0.4)],
                          [-np.cos(0.3) * np.sin(0.4), -np.sin(0.3) * np.cos(0.4)]])
        hessian_error = lambda h: np.max(np.abs(hessian(fn, u0, h)[:, :, 0] - exact))
        three_point = lambda h: abs(derivative_1d(np.sin, 0.5, 1, h, half_width=1) - np.cos(0.5))
        seven_point = lambda h: abs(derivative_1d(np.sin, 0.5, 1, h) - np.cos(0.5))
        self.assertAlmostEqual(observed_order(hessian_error, 0.02), 2.0, delta=0.1)
        self.assertAlmostEqual(observed_order(three_point, 0.02), 2.0, delta=0.1)
        # wider steps keep the sixth-order error above roundoff
        self.assertAlmostEqual(observed_order(seven_point, 0.2), 6.0, delta=0.4)


if __name__ == '__main__':
    unittest.main()
