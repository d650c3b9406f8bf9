"""
Charts.py - Parametrized hypersurface patches for the curvature diagnostics
"""

from dataclasses import dataclass, field
from typing import Callable, Iterator, List, Sequence, Tuple

import numpy as np

from NumGeo.Spherical import hyperspherical_grid, hyperspherical_point

ChartFn = Callable[[np.ndarray], np.ndarray]


@dataclass
class HypersurfaceChart:
    """fn maps grid parameters to R^{n+1}; one grid array per parameter"""
    fn: ChartFn
    grid: Tuple[np.ndarray, ...]
    periodic: Tuple[bool, ...] = field(default=())
    label: str = "chart"

    def __post_init__(self):
        self.grid = tuple(np.atleast_1d(np.asarray(g, dtype=float)) for g in self.grid)
        if not self.periodic:
            self.periodic = (False,) * len(self.grid)
        if len(self.periodic) != len(self.grid):
            raise ValueError("One periodic flag per parameter axis")

    @property
    def dim(self) -> int:
        return len(self.grid)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(len(g) for g in self.grid)

    @property
    def ambient_dim(self) -> int:
        return int(np.asarray(self.fn(self.params(next(self.nodes())))).size)

    def nodes(self) -> Iterator[Tuple[int, ...]]:
        return iter(np.ndindex(*self.shape))

    def params(self, node: Sequence[int]) -> np.ndarray:
        return np.array([g[i] for g, i in zip(self.grid, node)])

    def point(self, node: Sequence[int]) -> np.ndarray:
        return np.asarray(self.fn(self.params(node)), dtype=float)


def _midpoints(lo: float, hi: float, count: int) -> np.ndarray:
    return lo + (np.arange(count) + 0.5) * (hi - lo) / count


def sphere_chart(n: int, radius: float = 1.0, resolution: int = 8,
                 center: Sequence[float] = None) -> HypersurfaceChart:
    """S^n(r) in R^{n+1} by hyperspherical angles, poles excluded"""
    if radius <= 0:
        raise ValueError(f"Radius must be positive, got {radius}")
    c = np.zeros(n + 1) if center is None else np.asarray(center, dtype=float)
    grids, periodic = hyperspherical_grid(n + 1, resolution, 2 * resolution, include_poles=False)

    def fn(phi):
        return c + radius * hyperspherical_point(phi)

    label = f"S^{n}({radius:g})" if center is None else f"S^{n}({radius:g}) at {c.tolist()}"
    return HypersurfaceChart(fn, tuple(grids), periodic, label)


def flat_chart(n: int, resolution: int = 5, origin: Sequence[float] = None) -> HypersurfaceChart:
    """Affine patch x_{n+1} = const over [-1, 1]^n"""
    o = np.zeros(n + 1) if origin is None else np.asarray(origin, dtype=float)
    basis = np.eye(n + 1)[:n]

    def fn(u):
        return o + u @ basis

    grid = tuple(np.linspace(-1.0, 1.0, resolution) for _ in range(n))
    return HypersurfaceChart(fn, grid, (False,) * n, "flat patch")


def cone_chart(half_angle: float = np.pi / 4, resolution: int = 5,
               t_range: Tuple[float, float] = (0.5, 1.5)) -> HypersurfaceChart:
    """
    Cone over a patch of S^2 in R^4: t (cos a ω(θ, φ), sin a), apex at the
    origin excluded.
    """
    ca, sa = np.cos(half_angle), np.sin(half_angle)

    def fn(u):
        t, theta, phi = u
        omega = hyperspherical_point([theta, phi])
        return t * np.append(ca * omega, sa)

    grid = (np.linspace(t_range[0], t_range[1], resolution),
            _midpoints(np.pi / 4, 3 * np.pi / 4, resolution),
            _midpoints(0.0, np.pi / 2, resolution))
    return HypersurfaceChart(fn, grid, (False, False, False), "cone")


def cylinder_chart(radius: float = 1.0, resolution: int = 5) -> HypersurfaceChart:
    """S^1(r) × R^2 in R^4"""
    def fn(u):
        theta, a, b = u
        return np.array([radius * np.cos(theta), radius * np.sin(theta), a, b])

    grid = (np.arange(2 * resolution) * np.pi / resolution,
            np.linspace(-1.0, 1.0, resolution), np.linspace(-1.0, 1.0, resolution))
    return HypersurfaceChart(fn, grid, (True, False, False), f"S^1({radius:g}) x R^2")


def rotation_chart(k: int, n: int, profile_fn: ChartFn, profile_grid: Sequence,
                   profile_periodic: Sequence[bool] = None, fiber_resolution: int = 6,
                   label: str = "rotation") -> HypersurfaceChart:
    """
    (u, φ) -> (x(u), d(u) S(φ)) for a profile (x, d) in the half-space of
    R^{k+1}; fiber poles are excluded from the grid.
    """
    m = n - k + 1
    grids, flags = hyperspherical_grid(m, fiber_resolution, 2 * fiber_resolution, include_poles=False)
    profile_grid = [np.asarray(g, dtype=float) for g in profile_grid]
    profile_periodic = tuple(profile_periodic) if profile_periodic else (False,) * len(profile_grid)

    def fn(w):
        c = np.asarray(profile_fn(w[:k]), dtype=float)
        return np.concatenate([c[:k], c[k] * hyperspherical_point(w[k:])])

    return HypersurfaceChart(fn, tuple(profile_grid + list(grids)),
                             profile_periodic + tuple(flags), label)


def standard_charts() -> List[HypersurfaceChart]:
    return [sphere_chart(3, 1.0), sphere_chart(3, 2.0, center=[3.0, 0.0, 0.0, 0.0]),
            flat_chart(3), cone_chart(), cylinder_chart()]
