"""
Spherical.py - Hyperspherical coordinates on the unit sphere S^{m-1} ⊂ R^m

S(φ) = (cos φ1, sin φ1 cos φ2, ..., sin φ1 ... sin φ_{m-2} cos φ_{m-1},
        sin φ1 ... sin φ_{m-1})

which is exactly exp(φ_{m-1} E_{m-1,m}) ... exp(φ_1 E_{1,2}) e_1.
"""

from typing import List, Tuple

import numpy as np
from scipy.linalg import expm


def hyperspherical_point(phi) -> np.ndarray:
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    m = phi.size + 1
    x = np.ones(m)
    for i in range(m - 1):
        x[i] *= np.cos(phi[i])
        x[i + 1:] *= np.sin(phi[i])
    return x


def hyperspherical_jacobian(phi) -> np.ndarray:
    """Rows ∂S/∂φ_a, shape (m-1, m)"""
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    m = phi.size + 1
    s, c = np.sin(phi), np.cos(phi)
    J = np.zeros((m - 1, m))
    for a in range(m - 1):
        for i in range(a, m):
            value = 1.0
            for j in range(i):
                # differentiated factor sin φ_a -> cos φ_a
                value *= c[j] if j == a else s[j]
            if i < m - 1:
                value *= -s[i] if i == a else c[i]
            J[a, i] = value
    return J


def hyperspherical_grid(m: int, polar_points: int, azimuth_points: int,
                        include_poles: bool = True) -> Tuple[List[np.ndarray], Tuple[bool, ...]]:
    """
    Angle grids for S^{m-1}: polar angles on [0, π], the last angle on [0, 2π).

    Without poles the polar angles sit at cell midpoints so that every
    node is a regular point of the chart.
    """
    if m < 2:
        raise ValueError(f"Sphere dimension must be >= 1, got m={m}")
    if include_poles:
        polar = np.linspace(0.0, np.pi, polar_points)
    else:
        polar = (np.arange(polar_points) + 0.5) * np.pi / polar_points
    azimuth = np.arange(azimuth_points) * 2.0 * np.pi / azimuth_points
    grids = [polar.copy() for _ in range(m - 2)] + [azimuth]
    periodic = tuple([False] * (m - 2) + [True])
    return grids, periodic


def embedded_plane_rotation(dim: int, i: int, j: int, angle: float) -> np.ndarray:
    """exp(angle * E_ij) acting on R^dim, E_ij = e_j e_i^T - e_i e_j^T"""
    E = np.zeros((dim, dim))
    E[j, i] = 1.0
    E[i, j] = -1.0
    return expm(angle * E)


def fiber_element(dim: int, offset: int, m: int, phi) -> np.ndarray:
    """Group element of the SO(m) block at `offset` sending e_offset to S(φ)"""
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    g = np.eye(dim)
    for a in range(m - 1):
        g = embedded_plane_rotation(dim, offset + a, offset + a + 1, phi[a]) @ g
    return g
