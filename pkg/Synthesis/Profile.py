"""
Profile.py - Grid-sampled profile hypersurfaces L inside a section

A profile is a map from a parameter grid (dimension rank(section) - 1) to
section coordinates. Tangents come from central differences of the map, so
periodic axes need no special treatment at the ends.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from NumGeo.FiniteDiff import jacobian
from NumGeo.errors import ImmersionError
from PolarAction.Polarity import SectionSubspace
from config import SYNTHESIS_CONFIG, NUMGEO_CONFIG

logger = logging.getLogger(__name__)

ProfileFn = Callable[[np.ndarray], np.ndarray]


@dataclass
class ProfileHypersurface:
    """
    coords[node] are section coordinates, tangents[node] the chart
    differential (one row per parameter), both in grid order.
    """
    section: SectionSubspace
    grid: Tuple[np.ndarray, ...]
    coords: np.ndarray
    tangents: np.ndarray
    periodic: Tuple[bool, ...]
    fn: Optional[ProfileFn] = field(default=None, repr=False, compare=False)
    label: str = "profile"

    def __post_init__(self):
        self.grid = tuple(np.asarray(g, dtype=float) for g in self.grid)
        self.periodic = tuple(bool(p) for p in self.periodic)
        k = self.section.rank - 1
        if len(self.grid) != k:
            raise ValueError(f"Profile in a rank-{self.section.rank} section needs {k} "
                             f"parameters, got {len(self.grid)}")
        if len(self.periodic) != k:
            raise ValueError("One periodic flag per parameter axis")
        if self.coords.shape != self.grid_shape + (self.section.rank,):
            raise ValueError(f"coords have shape {self.coords.shape}, "
                             f"expected {self.grid_shape + (self.section.rank,)}")

    @property
    def grid_shape(self) -> Tuple[int, ...]:
        return tuple(len(g) for g in self.grid)

    @property
    def dim(self) -> int:
        return len(self.grid)

    @property
    def closed(self) -> bool:
        return all(self.periodic)

    @property
    def node_count(self) -> int:
        return int(np.prod(self.grid_shape))

    @property
    def flat_coords(self) -> np.ndarray:
        return self.coords.reshape(-1, self.section.rank)

    @property
    def flat_tangents(self) -> np.ndarray:
        return self.tangents.reshape(-1, self.dim, self.section.rank)

    @property
    def points(self) -> np.ndarray:
        """Ambient profile points, grid order"""
        return self.section.to_ambient(self.flat_coords)

    @property
    def ambient_tangents(self) -> np.ndarray:
        return self.flat_tangents @ self.section.frame.basis

    def node_params(self, index: int) -> np.ndarray:
        node = np.unravel_index(index, self.grid_shape)
        return np.array([g[i] for g, i in zip(self.grid, node)])

    @classmethod
    def from_function(cls, section: SectionSubspace, fn: ProfileFn, grid: Sequence,
                      periodic: Sequence[bool], step: float = None, label: str = "profile",
                      immersion_tol: float = None, closure_tol: float = None) -> 'ProfileHypersurface':
        """Sample fn on the grid and run the immersion and closure checks"""
        step = NUMGEO_CONFIG['fd_step'] if step is None else step
        immersion_tol = SYNTHESIS_CONFIG['immersion_tol'] if immersion_tol is None else immersion_tol
        closure_tol = SYNTHESIS_CONFIG['closure_tol'] if closure_tol is None else closure_tol
        grid = tuple(np.atleast_1d(np.asarray(g, dtype=float)) for g in grid)
        shape = tuple(len(g) for g in grid)
        rank = section.rank

        def chart(u):
            return np.asarray(fn(u), dtype=float).reshape(rank)

        coords = np.zeros(shape + (rank,))
        tangents = np.zeros(shape + (len(grid), rank))
        for node in np.ndindex(*shape):
            u = np.array([g[i] for g, i in zip(grid, node)])
            coords[node] = chart(u)
            tangents[node] = jacobian(chart, u, step)
            smallest = np.linalg.svd(tangents[node], compute_uv=False)[-1] if len(grid) else 1.0
            if smallest <= immersion_tol:
                raise ImmersionError(
                    f"Profile chart is not an immersion at node {node} "
                    f"(min singular value {smallest:.3e})",
                    report={'node': list(node), 'min_singular_value': float(smallest)})

        for axis, (g, is_periodic) in enumerate(zip(grid, periodic)):
            if not is_periodic:
                continue
            period = (g[1] - g[0]) * len(g) if len(g) > 1 else 0.0
            u = np.array([gg[0] for gg in grid])
            shifted = u.copy()
            shifted[axis] += period
            gap = float(np.linalg.norm(chart(shifted) - chart(u)))
            if gap > closure_tol:
                raise ImmersionError(
                    f"Periodic axis {axis} does not close up (gap {gap:.3e} > {closure_tol:.1e})",
                    report={'axis': axis, 'gap': gap})

        logger.debug(f"{label}: sampled {int(np.prod(shape))} profile nodes")
        return cls(section=section, grid=grid, coords=coords, tangents=tangents,
                   periodic=tuple(periodic), fn=chart, label=label)

    def to_dict(self) -> dict:
        return {
            'label': self.label,
            'section': self.section.to_dict(),
            'grid_shape': list(self.grid_shape),
            'periodic': list(self.periodic)
        }


def uniform_grid(start: float, stop: float, count: int, periodic: bool) -> np.ndarray:
    """Endpoint excluded on periodic axes so nodes are not duplicated"""
    return np.linspace(start, stop, count, endpoint=not periodic)


def circle_profile(section: SectionSubspace, center, radius: float, resolution: int = None,
                   arc: Tuple[float, float] = (0.0, 2.0 * np.pi), label: str = "circle") -> ProfileHypersurface:
    """
    Circle (or arc) c(u) = center + radius (cos u, sin u) in a rank-2 section.

    A full turn gives a closed periodic profile; the arc endpoints are nodes
    otherwise.
    """
    if section.rank != 2:
        raise ValueError(f"circle_profile needs a rank-2 section, got rank {section.rank}")
    if radius <= 0:
        raise ValueError(f"Radius must be positive, got {radius}")
    resolution = SYNTHESIS_CONFIG['profile_resolution'] if resolution is None else resolution
    center = np.asarray(center, dtype=float)
    full = np.isclose(arc[1] - arc[0], 2.0 * np.pi)

    def fn(u):
        return center + radius * np.array([np.cos(u[0]), np.sin(u[0])])

    grid = (uniform_grid(arc[0], arc[1], resolution, periodic=full),)
    return ProfileHypersurface.from_function(section, fn, grid, (bool(full),), label=label)

