"""
PolarAction - Linear isometric actions, orbits, sections and polarity
"""

from PolarAction.Action import (
    LinearAction, block_action, block_offsets, rotation_action, rotation_model_action,
    torus_action, circle_action, trivial_action, action_from_preset
)
from PolarAction.Orbits import (
    OrbitClass, killing_field, orbit_tangent, orbit_dimension, find_regular_point,
    max_orbit_dimension, orbit_span, classify_orbit
)
from PolarAction.Polarity import (
    SectionSubspace, PolarCertificate, cohomogeneity, section_at, regular_section,
    certify_polar, fixed_subspace
)

__all__ = [
    'LinearAction',
    'block_action',
    'block_offsets',
    'rotation_action',
    'rotation_model_action',
    'torus_action',
    'circle_action',
    'trivial_action',
    'action_from_preset',

    'OrbitClass',
    'killing_field',
    'orbit_tangent',
    'orbit_dimension',
    'find_regular_point',
    'max_orbit_dimension',
    'orbit_span',
    'classify_orbit',

    'SectionSubspace',
    'PolarCertificate',
    'cohomogeneity',
    'section_at',
    'regular_section',
    'certify_polar',
    'fixed_subspace'
]
