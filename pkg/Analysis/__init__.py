"""
Analysis - Curvature diagnostics of sampled hypersurfaces and their orbits
"""

from Analysis.Charts import (
    HypersurfaceChart, sphere_chart, flat_chart, cone_chart, cylinder_chart, rotation_chart,
    standard_charts
)
from Analysis.FundamentalForms import (
    CurvatureSample, NullityReport, fundamental_forms, analyze_chart, relative_nullity,
    nullity_report, position_tangency, totally_geodesic_points, positive_curvature_nodes,
    nullity_tangency_cross_check, interior_nodes, patch_stencil,
    sample_forms, stencil_samples, sample_curvature_deviation
)
from Analysis.OrbitDiagnostics import (
    orbit_umbilicity, orbit_geodesic_in_M, orbit_sectional_curvature_fd, gauss_consistency,
    rotation_structure_report
)

__all__ = [
    'HypersurfaceChart',
    'sphere_chart',
    'flat_chart',
    'cone_chart',
    'cylinder_chart',
    'rotation_chart',
    'standard_charts',

    'CurvatureSample',
    'NullityReport',
    'fundamental_forms',
    'analyze_chart',
    'relative_nullity',
    'nullity_report',
    'position_tangency',
    'totally_geodesic_points',
    'positive_curvature_nodes',
    'nullity_tangency_cross_check',
    'interior_nodes',
    'patch_stencil',
    'sample_forms',
    'stencil_samples',
    'sample_curvature_deviation',

    'orbit_umbilicity',
    'orbit_geodesic_in_M',
    'orbit_sectional_curvature_fd',
    'gauss_consistency',
    'rotation_structure_report'
]
