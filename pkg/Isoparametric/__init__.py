"""
Isoparametric - Orbit second forms, principal normals and Weyl groups
"""

from Isoparametric.SecondForm import (
    SecondFF, orbit_second_ff, orbit_second_ff_fd, shape_operator,
    normal_shape_operators, commutation_residual
)
from Isoparametric.PrincipalNormals import (
    PrincipalNormalDecomp, principal_normals, gauss_curvature_table,
    check_space_form_relations, constant_curvature, plane_curvatures, orbit_geometry,
    orbit_decomposition, check_transported_normals
)
from Isoparametric.WeylGroup import (
    FocalHyperplane, AffineIsometry, WeylGroupRep, focal_hyperplanes, weyl_group,
    permutation_deviation, invariant_hyperplane_reduction, weyl_group_at,
    weyl_group_for_section
)

__all__ = [
    'SecondFF',
    'orbit_second_ff',
    'orbit_second_ff_fd',
    'shape_operator',
    'normal_shape_operators',
    'commutation_residual',

    'PrincipalNormalDecomp',
    'principal_normals',
    'gauss_curvature_table',
    'check_space_form_relations',
    'constant_curvature',
    'plane_curvatures',
    'orbit_geometry',
    'orbit_decomposition',
    'check_transported_normals',

    'FocalHyperplane',
    'AffineIsometry',
    'WeylGroupRep',
    'focal_hyperplanes',
    'weyl_group',
    'permutation_deviation',
    'invariant_hyperplane_reduction',
    'weyl_group_at',
    'weyl_group_for_section'
]
