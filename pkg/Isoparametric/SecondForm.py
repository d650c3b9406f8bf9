"""
SecondForm.py - Second fundamental form and shape operators of orbits

For Killing fields X̂_a(q) = X_a q the ambient derivative of X̂_b along X̂_a
is X_b X_a p; its bracket part is tangent, so the normal part of the
symmetrized product ½(X_a X_b + X_b X_a) p gives α.
"""

import logging
from dataclasses import dataclass
from typing import List

import numpy as np
from scipy.linalg import expm

from NumGeo.Types import Frame, as_vec
from NumGeo.LinAlg import complement, project
from NumGeo.FiniteDiff import curve_second_derivative
from NumGeo.errors import PointOrbitError, TangentialVectorError
from PolarAction.Action import LinearAction
from PolarAction.Orbits import orbit_tangent
from config import ISOPARAMETRIC_CONFIG, NUMGEO_CONFIG

logger = logging.getLogger(__name__)


@dataclass
class SecondFF:
    """
    values[i, j] = α(X_i, X_j) in ambient coordinates for the orthonormal
    tangent frame X_i, shape (m, m, ambient_dim)
    """
    basepoint: np.ndarray
    tangent: Frame
    normal: Frame
    values: np.ndarray

    def __post_init__(self):
        m = self.tangent.rank
        if self.values.shape != (m, m, self.tangent.ambient_dim):
            raise ValueError(f"Second form values have shape {self.values.shape}, "
                             f"expected {(m, m, self.tangent.ambient_dim)}")
        asym = np.max(np.abs(self.values - self.values.transpose(1, 0, 2))) if m else 0.0
        if asym > 1e-10:
            raise ValueError(f"Second form is not symmetric (residual {asym:.3e})")

    @property
    def orbit_dim(self) -> int:
        return self.tangent.rank

    def evaluate(self, x_coords, y_coords) -> np.ndarray:
        """α(X, Y) for tangent vectors given in frame coordinates"""
        return np.einsum('i,j,ijk->k', np.asarray(x_coords), np.asarray(y_coords), self.values)


def tangent_lift(action: LinearAction, p: np.ndarray, tangent: Frame) -> np.ndarray:
    """Coefficients C with sum_a C[i, a] X_a p = i-th tangent basis vector"""
    algebra = action.algebra_basis()
    V = np.array([X @ p for X in algebra])
    C_T, *_ = np.linalg.lstsq(V.T, tangent.basis.T, rcond=None)
    return C_T.T


def orbit_second_ff(action: LinearAction, p, tol: float = None) -> SecondFF:
    """Closed-form second fundamental form of the orbit Gp"""
    p = as_vec(p, action.ambient_dim)
    tangent = orbit_tangent(action, p, tol)
    if tangent.rank == 0:
        raise PointOrbitError("point orbit has no second fundamental form")
    normal = complement(tangent)
    algebra = np.asarray(action.algebra_basis())
    C = tangent_lift(action, p, tangent)

    products = np.einsum('aij,bjk,k->abi', algebra, algebra, p)
    symmetric = 0.5 * (products + products.transpose(1, 0, 2))
    values = np.einsum('ia,jb,abk->ijk', C, C, symmetric)
    values = values @ normal.basis.T @ normal.basis
    values = 0.5 * (values + values.transpose(1, 0, 2))
    return SecondFF(basepoint=p, tangent=tangent, normal=normal, values=values)


def orbit_second_ff_fd(action: LinearAction, p, step: float = None) -> SecondFF:
    """
    Finite-difference oracle: α(X, X) from c''(0) of the orbit curves
    c(t) = exp(tA)p, off-diagonal entries by polarization.
    """
    step = NUMGEO_CONFIG['fd_step'] if step is None else step
    p = as_vec(p, action.ambient_dim)
    tangent = orbit_tangent(action, p)
    if tangent.rank == 0:
        raise PointOrbitError("point orbit has no second fundamental form")
    normal = complement(tangent)
    algebra = np.asarray(action.algebra_basis())
    lifts = np.tensordot(tangent_lift(action, p, tangent), algebra, axes=1)

    def diag_value(A):
        accel = curve_second_derivative(lambda t: expm(t * A) @ p, step)
        return project(accel, normal)

    m = tangent.rank
    values = np.zeros((m, m, action.ambient_dim))
    for i in range(m):
        values[i, i] = diag_value(lifts[i])
    for i in range(m):
        for j in range(i + 1, m):
            mixed = diag_value(lifts[i] + lifts[j])
            values[i, j] = values[j, i] = 0.5 * (mixed - values[i, i] - values[j, j])
    return SecondFF(basepoint=p, tangent=tangent, normal=normal, values=values)


def shape_operator(ff: SecondFF, xi, tol: float = None) -> np.ndarray:
    """Matrix <α(X_i, X_j), ξ> on tangent coordinates"""
    tol = ISOPARAMETRIC_CONFIG['tangential_tol'] if tol is None else tol
    xi = as_vec(xi, ff.tangent.ambient_dim)
    tangential = float(np.linalg.norm(project(xi, ff.tangent)))
    if tangential > tol * max(1.0, float(np.linalg.norm(xi))):
        raise TangentialVectorError(
            f"Vector has a tangential component of norm {tangential:.3e}; "
            "shape operators take normal vectors")
    A = ff.values @ xi
    return 0.5 * (A + A.T)


def normal_shape_operators(ff: SecondFF) -> List[np.ndarray]:
    """Shape operators along the orthonormal normal basis"""
    return [shape_operator(ff, nu) for nu in ff.normal.basis]


def commutation_residual(ff: SecondFF) -> float:
    """max ||A_a A_b - A_b A_a|| over the normal basis; zero for flat normal bundles"""
    ops = normal_shape_operators(ff)
    residual = 0.0
    for a in range(len(ops)):
        for b in range(a + 1, len(ops)):
            residual = max(residual, float(np.linalg.norm(ops[a] @ ops[b] - ops[b] @ ops[a])))
    return residual
