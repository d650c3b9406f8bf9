"""
Synthesis - Invariant hypersurfaces G(L) swept from Weyl-invariant profiles
"""

from Synthesis.Profile import (
    ProfileHypersurface, circle_profile, uniform_grid
)
from Synthesis.Sweep import (
    GroupSampling, GroupElements, PatchInfo, SweptHypersurface,
    group_elements, random_group_element, profile_frames, sweep, equivariance_check,
    equivariance_report, transversality_check, check_weyl_invariance, section_slice
)
from Synthesis.Rotation import (
    block_section, fiber_elements, axis_graph, boundary_smoothness_check, block_sweep,
    rotation_hypersurface, multi_rotational
)
from Synthesis.Warped import (
    WarpedProductSpec, warped_metric_eval, realizability_report, metric_report,
    warped_to_rotation
)
from Synthesis.MeshIO import (
    MeshData, atomic_write_text, write_mesh, read_mesh, write_metadata, read_metadata,
    metadata_path, projected_obj_text
)

__all__ = [
    'ProfileHypersurface',
    'circle_profile',
    'uniform_grid',

    'GroupSampling',
    'GroupElements',
    'PatchInfo',
    'SweptHypersurface',
    'group_elements',
    'random_group_element',
    'profile_frames',
    'sweep',
    'equivariance_check',
    'equivariance_report',
    'transversality_check',
    'check_weyl_invariance',
    'section_slice',

    'block_section',
    'fiber_elements',
    'axis_graph',
    'boundary_smoothness_check',
    'block_sweep',
    'rotation_hypersurface',
    'multi_rotational',

    'WarpedProductSpec',
    'warped_metric_eval',
    'realizability_report',
    'metric_report',
    'warped_to_rotation',

    'MeshData',
    'atomic_write_text',
    'write_mesh',
    'read_mesh',
    'write_metadata',
    'read_metadata',
    'metadata_path',
    'projected_obj_text'
]
