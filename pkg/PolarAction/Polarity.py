"""
Polarity.py - Cohomogeneity, sections and numerical polarity certificates
"""

import logging
from dataclasses import dataclass, asdict
from typing import Optional

import numpy as np

from NumGeo.Types import Frame, as_vec
from NumGeo.LinAlg import complement, kernel_frame
from NumGeo.errors import NonRegularPointError
from PolarAction.Action import LinearAction
from PolarAction.Orbits import orbit_tangent, max_orbit_dimension, find_regular_point
from config import POLAR_CONFIG

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SectionSubspace:
    """Linear subspace through the origin meeting the orbits, with the regular point it passes through"""
    frame: Frame
    basepoint: np.ndarray

    def __post_init__(self):
        p = as_vec(self.basepoint, self.frame.ambient_dim)
        if not self.frame.contains(p, tol=POLAR_CONFIG['basepoint_tol'] * max(1.0, np.linalg.norm(p))):
            raise ValueError("Section basepoint does not lie in the section")
        object.__setattr__(self, 'basepoint', p)

    @property
    def rank(self) -> int:
        return self.frame.rank

    @property
    def ambient_dim(self) -> int:
        return self.frame.ambient_dim

    def to_ambient(self, coords) -> np.ndarray:
        """Section coordinates (one row per point) to ambient points"""
        return np.asarray(coords, dtype=float) @ self.frame.basis

    def to_coordinates(self, points) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.frame.basis.T

    def to_dict(self) -> dict:
        return {'basis': self.frame.basis.tolist(), 'basepoint': self.basepoint.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> 'SectionSubspace':
        basis = np.asarray(data['basis'], dtype=float)
        return cls(Frame(basis, basis.shape[1]), np.asarray(data['basepoint'], dtype=float))


@dataclass
class PolarCertificate:
    """Residual of orthogonality between the section and all Killing fields on a sampled grid"""
    max_residual: float
    polar: bool
    grid_points: int
    seed: int
    tolerance: float

    def to_dict(self) -> dict:
        return asdict(self)


def cohomogeneity(action: LinearAction, sampler_seed: int = None, samples: int = None) -> int:
    """Codimension of a principal orbit"""
    return action.ambient_dim - max_orbit_dimension(action, sampler_seed, samples)


def section_at(action: LinearAction, p_regular, tol: float = None) -> SectionSubspace:
    """Normal space of the orbit through a regular point"""
    p = as_vec(p_regular, action.ambient_dim)
    tangent = orbit_tangent(action, p, tol)
    max_dim = max_orbit_dimension(action)
    if tangent.rank < max_dim:
        raise NonRegularPointError(
            f"Point is not regular: orbit dimension {tangent.rank} < maximal {max_dim}")
    return SectionSubspace(frame=complement(tangent), basepoint=p)


def regular_section(action: LinearAction, sampler_seed: int = None) -> SectionSubspace:
    return section_at(action, find_regular_point(action, sampler_seed))


def certify_polar(action: LinearAction, section: SectionSubspace, grid_points: int = None,
                  seed: int = None, tol: float = None) -> PolarCertificate:
    """
    max over sampled unit q in the section and unit algebra elements X of the
    length of the section component of Xq. Zero on a polar section.
    """
    grid_points = POLAR_CONFIG['grid_points'] if grid_points is None else grid_points
    seed = POLAR_CONFIG['seed'] if seed is None else seed
    tol = POLAR_CONFIG['polar_tol'] if tol is None else tol

    rng = np.random.default_rng(seed)
    coords = rng.standard_normal((grid_points, section.rank))
    coords = np.vstack([section.to_coordinates(section.basepoint[None, :]), coords])
    points = section.to_ambient(coords)
    norms = np.linalg.norm(points, axis=1)
    points = points[norms > 0] / norms[norms > 0, None]

    residual = 0.0
    B = section.frame.basis
    for X in action.algebra_basis():
        # rows: sampled q; components of Xq along the section basis
        components = (points @ X.T) @ B.T
        residual = max(residual, float(np.max(np.linalg.norm(components, axis=1))))

    polar = residual < tol
    logger.info(f"{action.label}: polar certificate residual {residual:.3e} "
                f"({'polar' if polar else 'not polar'})")
    return PolarCertificate(max_residual=residual, polar=polar, grid_points=len(points),
                            seed=seed, tolerance=tol)


def fixed_subspace(action: LinearAction, tol: float = None) -> Frame:
    """Common kernel of the Lie algebra: the rotation axis when non-trivial"""
    tol = POLAR_CONFIG['rank_tol'] if tol is None else tol
    algebra = action.algebra_basis()
    if not algebra:
        return Frame(np.eye(action.ambient_dim), action.ambient_dim)
    return kernel_frame(np.vstack(algebra), tol)
