"""
Warped.py - Warped products L ×_ρ S^{n-k} and their realization as rotation hypersurfaces

The metric is <u, u'>_L + ρ(x)² c² <v, v'>_{S^{n-k}} where c is the fiber
radius convention. It is realized by the rotation hypersurface of the
base chart exactly when the axis distance equals c·ρ.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Sequence, Tuple

import numpy as np

from NumGeo.FiniteDiff import jacobian
from NumGeo.Spherical import fiber_element, hyperspherical_jacobian
from NumGeo.errors import RealizabilityError
from Synthesis.Rotation import rotation_hypersurface
from config import SYNTHESIS_CONFIG, NUMGEO_CONFIG

logger = logging.getLogger(__name__)


@dataclass
class WarpedProductSpec:
    """
    base_chart maps base parameters u (k of them) to (x_1, ..., x_k, d) in
    the half-space d >= 0; rho is the warping function on the same grid.
    """
    base_chart: Callable[[np.ndarray], np.ndarray]
    base_grid: Tuple[np.ndarray, ...]
    rho: Callable[[np.ndarray], float]
    fiber_dim: int
    periodic: Tuple[bool, ...] = field(default=())
    fiber_radius_convention: float = 1.0
    label: str = "warped"

    def __post_init__(self):
        self.base_grid = tuple(np.atleast_1d(np.asarray(g, dtype=float)) for g in self.base_grid)
        if not self.periodic:
            self.periodic = (False,) * len(self.base_grid)
        if self.fiber_dim < 1:
            raise ValueError(f"fiber_dim must be >= 1, got {self.fiber_dim}")
        if self.fiber_radius_convention <= 0:
            raise ValueError("fiber_radius_convention must be positive")
        axis_tol = SYNTHESIS_CONFIG['axis_tol']
        for u in self.nodes():
            if self.axis_distance(u) > axis_tol and self.rho(u) <= 0:
                raise ValueError(f"Warping function must be positive off the axis (node {u.tolist()})")

    @property
    def base_dim(self) -> int:
        return len(self.base_grid)

    @property
    def n(self) -> int:
        return self.base_dim + self.fiber_dim

    def nodes(self):
        shape = tuple(len(g) for g in self.base_grid)
        for node in np.ndindex(*shape):
            yield np.array([g[i] for g, i in zip(self.base_grid, node)])

    def axis_distance(self, u) -> float:
        return float(np.asarray(self.base_chart(np.asarray(u, dtype=float)), dtype=float)[-1])

    def base_metric(self, u, step: float = None) -> np.ndarray:
        step = NUMGEO_CONFIG['fd_step'] if step is None else step
        J = jacobian(lambda w: np.asarray(self.base_chart(w), dtype=float), np.asarray(u, dtype=float), step)
        return J @ J.T


def warped_metric_eval(spec: WarpedProductSpec, u, u_prime, v, v_prime, base_point,
                       step: float = None) -> float:
    """
    <u, u'>_L + ρ(base_point)² c² <v, v'>; u, u' in base chart coordinates,
    v, v' ambient vectors tangent to the unit fiber sphere.
    """
    g_base = spec.base_metric(base_point, step)
    rho = float(spec.rho(np.asarray(base_point, dtype=float)))
    c = spec.fiber_radius_convention
    base_term = float(np.asarray(u, dtype=float) @ g_base @ np.asarray(u_prime, dtype=float))
    fiber_term = float(np.asarray(v, dtype=float) @ np.asarray(v_prime, dtype=float))
    return base_term + (rho * c) ** 2 * fiber_term


def realizability_report(spec: WarpedProductSpec, tol: float = None) -> Dict[str, Any]:
    """|d(u) - c ρ(u)| at every base node, relative to max(1, d)"""
    tol = SYNTHESIS_CONFIG['realizability_tol'] if tol is None else tol
    worst, worst_node = 0.0, None
    for u in spec.nodes():
        d = spec.axis_distance(u)
        mismatch = abs(d - spec.fiber_radius_convention * float(spec.rho(u))) / max(1.0, abs(d))
        if mismatch > worst:
            worst, worst_node = mismatch, u.tolist()
    return {'passed': worst <= tol, 'max_mismatch': worst, 'node': worst_node, 'tolerance': tol}


def _metric_sample_angles(m: int) -> Sequence[np.ndarray]:
    if m == 2:
        return [np.array([0.7]), np.array([2.9])]
    polar = [np.pi / 3.0, 2.0 * np.pi / 3.0]
    return [np.array([p] * (m - 2) + [0.7]) for p in polar]


def metric_report(spec: WarpedProductSpec, step: float = None, tol: float = None,
                  max_nodes: int = 32) -> Dict[str, Any]:
    """
    Finite-difference first fundamental form of the chart
    (u, φ) -> g(φ)·(x(u), d(u) e) against warped_metric_eval on the
    coordinate vectors.
    """
    step = SYNTHESIS_CONFIG['metric_fd_step'] if step is None else step
    tol = SYNTHESIS_CONFIG['metric_tol'] if tol is None else tol
    k, m = spec.base_dim, spec.fiber_dim + 1
    dim = k + m
    axis_tol = SYNTHESIS_CONFIG['axis_tol']

    def chart(w):
        u, phi = w[:k], w[k:]
        c = np.asarray(spec.base_chart(u), dtype=float)
        point = np.zeros(dim)
        point[:k] = c[:k]
        point[k] = c[k]
        return fiber_element(dim, k, m, phi) @ point

    nodes = [u for u in spec.nodes() if spec.axis_distance(u) > axis_tol]
    if len(nodes) > max_nodes:
        nodes = [nodes[i] for i in np.linspace(0, len(nodes) - 1, max_nodes).astype(int)]

    worst = 0.0
    for u in nodes:
        for phi in _metric_sample_angles(m):
            J = jacobian(chart, np.concatenate([u, phi]), step)
            induced = J @ J.T
            fiber_vectors = hyperspherical_jacobian(phi)
            expected = np.zeros((dim - 1, dim - 1))
            zero_b, zero_f = np.zeros(k), np.zeros(m)
            for a in range(dim - 1):
                for b in range(dim - 1):
                    ua = np.eye(k)[a] if a < k else zero_b
                    ub = np.eye(k)[b] if b < k else zero_b
                    va = fiber_vectors[a - k] if a >= k else zero_f
                    vb = fiber_vectors[b - k] if b >= k else zero_f
                    expected[a, b] = warped_metric_eval(spec, ua, ub, va, vb, u)
            scale = max(float(np.max(np.abs(expected))), 1e-300)
            worst = max(worst, float(np.max(np.abs(induced - expected))) / scale)

    passed = worst < tol
    logger.info(f"{spec.label}: warped metric max relative error {worst:.3e} over {len(nodes)} base nodes")
    return {'passed': passed, 'max_relative_error': worst, 'nodes': len(nodes), 'fd_step': step,
            'tolerance': tol}


def warped_to_rotation(spec: WarpedProductSpec, fiber_resolution: Tuple[int, int] = None,
                       tol: float = None, step: float = None) -> Dict[str, Any]:
    """Rotation hypersurface realizing the warped product, with its metric report"""
    realizable = realizability_report(spec, tol)
    if not realizable['passed']:
        raise RealizabilityError(
            f"Axis distance differs from c·ρ by {realizable['max_mismatch']:.3e} "
            f"at base node {realizable['node']}: not realizable as a rotation hypersurface",
            report=realizable)
    result = rotation_hypersurface(spec.base_dim, spec.n, spec.base_chart, spec.base_grid,
                                   spec.periodic, half_space=True,
                                   fiber_resolution=fiber_resolution, label=spec.label)
    result['metric_report'] = metric_report(spec, step)
    result['realizability'] = realizable
    return result
