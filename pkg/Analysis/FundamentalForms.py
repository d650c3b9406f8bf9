"""
FundamentalForms.py - Finite-difference fundamental forms of hypersurface charts

Sign convention: the unit normal points away from the centroid of nearby
chart points, so a round sphere has principal curvatures +1/r.

Swept sample sets without a chart (meshes read back from disk) get their
second fundamental form from a quadric fit over the grid stencil of their
patch, with the same sign convention.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import eigh

from NumGeo.LinAlg import orthonormalize, complement
from NumGeo.FiniteDiff import jacobian, hessian
from NumGeo.errors import GeometryError, ImmersionError, NonRegularPointError
from Analysis.Charts import HypersurfaceChart
from Synthesis.Sweep import PatchInfo, SweptHypersurface
from config import ANALYSIS_CONFIG, SYNTHESIS_CONFIG

logger = logging.getLogger(__name__)


@dataclass
class CurvatureSample:
    point: np.ndarray
    first_ff: np.ndarray
    second_ff_scalar: np.ndarray
    principal_curvatures: np.ndarray
    normal: np.ndarray
    node: Tuple[int, ...] = ()

    def __post_init__(self):
        smallest = float(np.min(np.linalg.eigvalsh(self.first_ff)))
        if smallest <= 1e-8:
            raise ImmersionError(f"First fundamental form degenerate at node {self.node} "
                                 f"(min eigenvalue {smallest:.3e})")
        asym = float(np.max(np.abs(self.second_ff_scalar - self.second_ff_scalar.T)))
        if asym > 1e-6:
            raise ValueError(f"Second fundamental form not symmetric at node {self.node} ({asym:.3e})")

    @property
    def dim(self) -> int:
        return self.first_ff.shape[0]

    def to_dict(self) -> Dict[str, Any]:
        return {'node': list(self.node), 'point': self.point.tolist(),
                'principal_curvatures': self.principal_curvatures.tolist()}


@dataclass
class NullityReport:
    nullities: Dict[Tuple[int, ...], int]
    threshold: float

    def __post_init__(self):
        if any(v < 0 for v in self.nullities.values()):
            raise ValueError("Nullity index must be non-negative")

    @property
    def min_nullity(self) -> int:
        return min(self.nullities.values()) if self.nullities else 0


def _oriented_normal(chart: HypersurfaceChart, u: np.ndarray, x: np.ndarray,
                     nu: np.ndarray, h: float) -> np.ndarray:
    s = max(10.0 * h, 1e-2)
    neighbours = []
    for i in range(u.size):
        e = np.zeros_like(u)
        e[i] = s
        neighbours.append(np.asarray(chart.fn(u + e), dtype=float))
        neighbours.append(np.asarray(chart.fn(u - e), dtype=float))
    offset = x - np.mean(neighbours, axis=0)
    side = float(nu @ offset)
    if abs(side) > 1e-12 * max(1.0, float(np.linalg.norm(x))):
        return nu if side > 0 else -nu
    # flat to second order: fall back to the lexicographic sign
    lead = nu[np.flatnonzero(np.abs(nu) > 1e-12)[0]]
    return nu if lead > 0 else -nu


def fundamental_forms(chart: HypersurfaceChart, node: Sequence[int],
                      fd_step: float = None) -> CurvatureSample:
    h = ANALYSIS_CONFIG['fd_step'] if fd_step is None else fd_step
    u = chart.params(node)
    fn = lambda w: np.asarray(chart.fn(w), dtype=float)
    x = fn(u)
    J = jacobian(fn, u, h)
    if J.shape[0] != x.size - 1:
        raise ValueError(f"Chart has {J.shape[0]} parameters in R^{x.size}: not a hypersurface chart")
    tangent = orthonormalize(J, ambient_dim=x.size)
    smallest = float(np.linalg.svd(J, compute_uv=False)[-1])
    if tangent.rank < J.shape[0] or smallest <= SYNTHESIS_CONFIG['immersion_tol']:
        raise ImmersionError(f"{chart.label}: degenerate tangents at node {tuple(node)} "
                             f"(min singular value {smallest:.3e})")
    nu = _oriented_normal(chart, u, x, complement(tangent).basis[0], h)

    g = J @ J.T
    H = hessian(fn, u, h)
    b = -(H @ nu)
    b = 0.5 * (b + b.T)
    kappa = eigh(b, g, eigvals_only=True)
    return CurvatureSample(point=x, first_ff=g, second_ff_scalar=b,
                           principal_curvatures=np.sort(kappa), normal=nu, node=tuple(node))


def analyze_chart(chart: HypersurfaceChart, fd_step: float = None) -> List[CurvatureSample]:
    return [fundamental_forms(chart, node, fd_step) for node in chart.nodes()]


def relative_nullity(sample: CurvatureSample, eig_tol: float = None) -> int:
    eig_tol = ANALYSIS_CONFIG['eig_tol'] if eig_tol is None else eig_tol
    return int(np.sum(np.abs(sample.principal_curvatures) < eig_tol))


def nullity_report(chart: HypersurfaceChart, eig_tol: float = None,
                   fd_step: float = None) -> NullityReport:
    eig_tol = ANALYSIS_CONFIG['eig_tol'] if eig_tol is None else eig_tol
    return NullityReport({s.node: relative_nullity(s, eig_tol) for s in analyze_chart(chart, fd_step)},
                         eig_tol)


def position_tangency(chart: HypersurfaceChart, node: Sequence[int], tol: float = None,
                      fd_step: float = None) -> Dict[str, Any]:
    """|<position, unit normal>|; zero where the position vector is tangent"""
    tol = ANALYSIS_CONFIG['tangency_tol'] if tol is None else tol
    sample = fundamental_forms(chart, node, fd_step)
    component = abs(float(sample.point @ sample.normal))
    return {'tangent': component < tol, 'normal_component': component}


def totally_geodesic_points(chart: HypersurfaceChart, tol: float = None,
                            fd_step: float = None) -> List[Tuple[int, ...]]:
    tol = ANALYSIS_CONFIG['geodesic_tol'] if tol is None else tol
    flagged = []
    for sample in analyze_chart(chart, fd_step):
        if float(np.max(np.abs(sample.second_ff_scalar))) < tol:
            flagged.append(sample.node)
    logger.debug(f"{chart.label}: {len(flagged)} totally geodesic nodes")
    return flagged


def positive_curvature_nodes(chart: HypersurfaceChart, tol: float = None,
                             fd_step: float = None) -> List[Tuple[int, ...]]:
    """Nodes where every principal curvature w.r.t. the outward normal is positive"""
    tol = ANALYSIS_CONFIG['eig_tol'] if tol is None else tol
    return [s.node for s in analyze_chart(chart, fd_step) if np.all(s.principal_curvatures > tol)]


def nullity_tangency_cross_check(chart: HypersurfaceChart, nodes: Optional[Sequence] = None,
                                 tol: float = None, eig_tol: float = None,
                                 fd_step: float = None) -> Dict[str, Any]:
    """Where the position vector is tangent the relative nullity must be positive"""
    nodes = list(chart.nodes()) if nodes is None else [tuple(n) for n in nodes]
    tangent_nodes, violations = [], []
    for node in nodes:
        if not position_tangency(chart, node, tol, fd_step)['tangent']:
            continue
        tangent_nodes.append(node)
        if relative_nullity(fundamental_forms(chart, node, fd_step), eig_tol) < 1:
            violations.append(node)
    return {'passed': not violations, 'checked': len(nodes), 'tangent_nodes': len(tangent_nodes),
            'violations': violations}


def interior_nodes(chart: HypersurfaceChart) -> List[Tuple[int, ...]]:
    """Nodes away from the boundary of every non-periodic axis"""
    result = []
    for node in chart.nodes():
        if all(p or 0 < i < n - 1 for i, n, p in zip(node, chart.shape, chart.periodic)):
            result.append(node)
    return result


def _stencil_offsets(axes: Sequence[int], ndim: int) -> List[Tuple[int, ...]]:
    offsets = []
    for a in axes:
        for s in (-2, -1, 1, 2):
            e = [0] * ndim
            e[a] = s
            offsets.append(tuple(e))
    for a, b in itertools.combinations(axes, 2):
        for sa, sb in itertools.product((-1, 1), repeat=2):
            e = [0] * ndim
            e[a], e[b] = sa, sb
            offsets.append(tuple(e))
    return offsets


def patch_stencil(patch: PatchInfo, index: int) -> Optional[List[int]]:
    """
    Global indices of the grid neighbours of a sample: ±1 and ±2 along each
    axis plus the diagonal ±1 pairs. None outside the patch or when the
    stencil leaves a non-periodic edge. Axes of length one are skipped.
    """
    if not patch.start <= index < patch.start + patch.size:
        return None
    node = np.unravel_index(index - patch.start, patch.shape)
    axes = [a for a, s in enumerate(patch.shape) if s > 1]
    result = []
    for offset in _stencil_offsets(axes, len(patch.shape)):
        target = []
        for a, (i, d) in enumerate(zip(node, offset)):
            j = int(i) + d
            if patch.periodic[a]:
                j %= patch.shape[a]
            elif not 0 <= j < patch.shape[a]:
                return None
            target.append(j)
        result.append(patch.start + int(np.ravel_multi_index(target, patch.shape)))
    return result


def _sample_stencil(M: SweptHypersurface, index: int) -> Optional[List[int]]:
    for patch in M.patches:
        stencil = patch_stencil(patch, index)
        if stencil is not None:
            return stencil
    return None


def sample_forms(M: SweptHypersurface, index: int) -> CurvatureSample:
    """
    Second fundamental form at a swept sample from the least-squares quadric
    h = a·u + ½ uᵀBu over its patch stencil, where u and h are the tangent
    and normal parts of the neighbour offsets. The first form is the
    identity in the orthonormal tangent frame of the sample.
    """
    if not M.regular[index]:
        raise NonRegularPointError(f"Sample {index} lies on a singular orbit")
    stencil = _sample_stencil(M, index)
    if stencil is None:
        raise GeometryError(f"Sample {index} has no full grid stencil")
    x = M.points[index]
    T = M.tangents[index]
    nu = M.normals[index]
    offsets = M.points[stencil] - x
    if float(nu @ offsets.mean(axis=0)) > 0:
        nu = -nu
    u = offsets @ T.T
    h = offsets @ nu
    n = T.shape[0]
    pairs = [(a, b) for a in range(n) for b in range(a, n)]
    quadratic = np.stack([u[:, a] * u[:, b] * (0.5 if a == b else 1.0) for a, b in pairs], axis=1)
    design = np.hstack([u, quadratic])
    coeffs, _, rank, _ = np.linalg.lstsq(design, h, rcond=None)
    if rank < design.shape[1]:
        raise ImmersionError(f"Sample {index}: stencil spans rank {rank} of {design.shape[1]} "
                             f"quadric terms")
    B = np.zeros((n, n))
    for c, (a, b) in zip(coeffs[n:], pairs):
        B[a, b] = B[b, a] = c
    kappa = np.linalg.eigvalsh(-B)
    return CurvatureSample(point=x, first_ff=np.eye(n), second_ff_scalar=-B,
                           principal_curvatures=np.sort(kappa), normal=nu, node=(int(index),))


def stencil_samples(M: SweptHypersurface, count: int) -> List[int]:
    """Up to `count` evenly spread regular samples with a full grid stencil"""
    usable = [int(i) for i in np.flatnonzero(M.regular) if _sample_stencil(M, int(i)) is not None]
    if not usable:
        return []
    picks = np.unique(np.linspace(0, len(usable) - 1, min(count, len(usable))).astype(int))
    return [usable[i] for i in picks]


def sample_curvature_deviation(M: SweptHypersurface, reference: SweptHypersurface,
                               indices: Sequence[int]) -> float:
    """Largest relative gap between fitted principal curvatures of two sample sets of one layout"""
    worst = 0.0
    for i in indices:
        got = sample_forms(M, i).principal_curvatures
        expected = sample_forms(reference, i).principal_curvatures
        scale = max(1.0, float(np.max(np.abs(expected))))
        worst = max(worst, float(np.max(np.abs(got - expected))) / scale)
    return worst
