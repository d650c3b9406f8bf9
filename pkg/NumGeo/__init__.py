"""
NumGeo - Dense small-dimension linear algebra kernel

Vectors, skew generators, rotations, orthonormal frames, projections and
finite-difference stencils shared by every other package.
"""

from NumGeo.Types import SkewMat, OrthoMat, Frame, as_vec
from NumGeo.LinAlg import (
    exp_skew, bracket, so_basis, orthonormalize,
    complement, project, span_residual, kernel_frame
)
from NumGeo.FiniteDiff import fd_weights, derivative_1d, jacobian, hessian
from NumGeo.Spherical import (
    hyperspherical_point, hyperspherical_jacobian, hyperspherical_grid, embedded_plane_rotation,
    fiber_element
)
from NumGeo.errors import GeometryError

__all__ = [
    # Types
    'SkewMat',
    'OrthoMat',
    'Frame',
    'as_vec',

    # Linear algebra
    'exp_skew',
    'bracket',
    'so_basis',
    'orthonormalize',
    'complement',
    'project',
    'span_residual',
    'kernel_frame',

    # Finite differences
    'fd_weights',
    'derivative_1d',
    'jacobian',
    'hessian',

    # Hyperspherical coordinates
    'hyperspherical_point',
    'hyperspherical_jacobian',
    'hyperspherical_grid',
    'embedded_plane_rotation',
    'fiber_element',

    'GeometryError'
]
