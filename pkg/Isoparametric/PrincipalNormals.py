"""
PrincipalNormals.py - Principal-normal decomposition of orbit second forms

Simultaneous diagonalization of the commuting shape operators: one generic
combination first, degenerate eigenspaces refined recursively on the
remaining operators, then joint eigenvalues clustered into principal normals.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import numpy as np
from scipy.linalg import eigh, expm

from NumGeo.Types import Frame, as_vec
from NumGeo.errors import ClusteringAmbiguityError, GeometryError
from PolarAction.Action import LinearAction
from Isoparametric.SecondForm import (
    SecondFF, orbit_second_ff, normal_shape_operators, commutation_residual
)
from config import ISOPARAMETRIC_CONFIG, POLAR_CONFIG

logger = logging.getLogger(__name__)


@dataclass
class PrincipalNormalDecomp:
    """Principal normals η_i with their curvature distributions E_i"""
    normals: List[np.ndarray]
    spaces: List[Frame]
    multiplicities: List[int]
    basepoint: np.ndarray
    normal_frame: Frame
    residual: float = 0.0

    def __post_init__(self):
        if len(self.normals) != len(self.spaces) or len(self.spaces) != len(self.multiplicities):
            raise ValueError("normals, spaces and multiplicities must have equal length")
        if any(s.rank != m for s, m in zip(self.spaces, self.multiplicities)):
            raise ValueError("Each multiplicity must equal the rank of its space")

    @property
    def count(self) -> int:
        return len(self.normals)

    @property
    def orbit_dim(self) -> int:
        return int(sum(self.multiplicities))

    def normal_coordinates(self) -> np.ndarray:
        """Principal normals in normal-frame coordinates, one row each"""
        return np.array([self.normal_frame.coordinates(eta) for eta in self.normals])

    def to_dict(self) -> Dict[str, Any]:
        return {
            'count': self.count,
            'normals': [eta.tolist() for eta in self.normals],
            'norms': [float(np.linalg.norm(eta)) for eta in self.normals],
            'multiplicities': list(self.multiplicities),
            'residual': self.residual
        }


def _simultaneous_eigenbasis(ops: List[np.ndarray], rng: np.random.Generator,
                             tol: float) -> np.ndarray:
    """Orthonormal columns diagonalizing every operator in ops"""
    m = ops[0].shape[0]
    if all(np.max(np.abs(A - np.trace(A) / m * np.eye(m))) < tol for A in ops):
        return np.eye(m)
    if len(ops) == 1:
        return eigh(ops[0])[1]
    combo = np.tensordot(rng.standard_normal(len(ops)), np.asarray(ops), axes=1)
    vals, vecs = eigh(combo)
    columns = []
    start = 0
    while start < m:
        stop = start + 1
        while stop < m and abs(vals[stop] - vals[start]) < tol:
            stop += 1
        block = vecs[:, start:stop]
        if block.shape[1] > 1:
            restricted = [block.T @ A @ block for A in ops]
            block = block @ _simultaneous_eigenbasis(restricted, rng, tol)
        columns.append(block)
        start = stop
    return np.hstack(columns)


def principal_normals(ff: SecondFF, cluster_tol: float = None,
                      seed: int = None) -> PrincipalNormalDecomp:
    """
    Cluster the joint eigenvalues of the shape operators into principal
    normals. Candidates at distance in [cluster_tol, 2*cluster_tol] are
    ambiguous and raise instead of being silently merged or split.
    """
    cluster_tol = ISOPARAMETRIC_CONFIG['cluster_tol'] if cluster_tol is None else cluster_tol
    seed = POLAR_CONFIG['seed'] if seed is None else seed

    commutator = commutation_residual(ff)
    if commutator > ISOPARAMETRIC_CONFIG['commutation_tol']:
        raise GeometryError(f"Shape operators do not commute (residual {commutator:.3e}); "
                            "the normal bundle is not flat")

    m = ff.orbit_dim
    ops = normal_shape_operators(ff)
    rng = np.random.default_rng(seed)
    if ops:
        U = _simultaneous_eigenbasis(ops, rng, cluster_tol)
    else:
        U = np.eye(m)

    # α(u_k, u_k) for each joint eigenvector
    candidates = np.einsum('ik,jk,ijd->kd', U, U, ff.values)

    clusters: List[List[int]] = []
    centers: List[np.ndarray] = []
    for k, eta in enumerate(candidates):
        distances = [float(np.linalg.norm(eta - c)) for c in centers]
        nearest = int(np.argmin(distances)) if distances else -1
        if nearest >= 0 and distances[nearest] < cluster_tol:
            clusters[nearest].append(k)
            centers[nearest] = candidates[clusters[nearest]].mean(axis=0)
        elif nearest >= 0 and distances[nearest] <= 2 * cluster_tol:
            raise ClusteringAmbiguityError(
                f"Principal normal candidates {distances[nearest]:.3e} apart, inside "
                f"[{cluster_tol:.1e}, {2 * cluster_tol:.1e}]; adjust cluster_tol")
        else:
            clusters.append([k])
            centers.append(eta.copy())

    order = sorted(range(len(clusters)),
                   key=lambda c: (-round(float(np.linalg.norm(centers[c])), 9),
                                  tuple(np.round(centers[c], 9))))

    residual = 0.0
    for c in range(len(clusters)):
        for k in clusters[c]:
            residual = max(residual, float(np.linalg.norm(candidates[k] - centers[c])))
    off = np.einsum('ik,jl,ijd->kld', U, U, ff.values)
    for k in range(m):
        for l in range(k + 1, m):
            residual = max(residual, float(np.linalg.norm(off[k, l])))

    normals, spaces, mults = [], [], []
    for c in order:
        cols = U[:, clusters[c]]
        normals.append(centers[c])
        spaces.append(Frame(cols.T @ ff.tangent.basis, ff.tangent.ambient_dim))
        mults.append(len(clusters[c]))

    logger.debug(f"{len(normals)} principal normals, multiplicities {mults}, residual {residual:.2e}")
    return PrincipalNormalDecomp(normals=normals, spaces=spaces, multiplicities=mults,
                                 basepoint=ff.basepoint, normal_frame=ff.normal, residual=residual)


def gauss_curvature_table(d: PrincipalNormalDecomp) -> np.ndarray:
    """K[i][j] = <η_i, η_j>: sectional curvature of planes within/across curvature distributions"""
    N = np.array(d.normals)
    return N @ N.T


def check_space_form_relations(d: PrincipalNormalDecomp, c: float,
                               tol: float = None) -> Dict[str, Any]:
    """
    For orbits inside a space form of curvature c: <η_i, η_j> = c off the
    diagonal, at most one |η_i|^2 = c, and differences η_i - η_k, η_j - η_k
    linearly independent.
    """
    tol = ISOPARAMETRIC_CONFIG['relation_tol'] if tol is None else tol
    K = gauss_curvature_table(d)
    s = d.count
    violations = []

    for i in range(s):
        for j in range(i + 1, s):
            if abs(K[i, j] - c) > tol:
                violations.append(f"<eta_{i}, eta_{j}> = {K[i, j]:.6g} != {c:.6g}")

    on_level = [i for i in range(s) if abs(K[i, i] - c) <= tol]
    if len(on_level) > 1:
        violations.append(f"|eta_i|^2 = {c:.6g} for more than one i: {on_level}")

    for k in range(s):
        for i in range(s):
            for j in range(i + 1, s):
                if k in (i, j):
                    continue
                pair = np.array([d.normals[i] - d.normals[k], d.normals[j] - d.normals[k]])
                smallest = np.linalg.svd(pair, compute_uv=False)[-1]
                if smallest <= tol:
                    violations.append(
                        f"eta_{i} - eta_{k} and eta_{j} - eta_{k} are linearly dependent")

    return {'passed': not violations, 'curvature': c, 'violations': violations}


def constant_curvature(d: PrincipalNormalDecomp, tol: float = None) -> Optional[float]:
    """Common sectional curvature of all tangent planes of the orbit, if any"""
    tol = ISOPARAMETRIC_CONFIG['relation_tol'] if tol is None else tol
    K = gauss_curvature_table(d)
    values = [K[i, i] for i in range(d.count) if d.multiplicities[i] >= 2]
    values += [K[i, j] for i in range(d.count) for j in range(i + 1, d.count)]
    if not values:
        return None
    if max(values) - min(values) > tol:
        return None
    return float(np.mean(values))


def plane_curvatures(d: PrincipalNormalDecomp) -> List[float]:
    """Every sectional-curvature value attained by a coordinate plane"""
    K = gauss_curvature_table(d)
    values = [float(K[i, i]) for i in range(d.count) if d.multiplicities[i] >= 2]
    values += [float(K[i, j]) for i in range(d.count) for j in range(i + 1, d.count)]
    return values


def orbit_geometry(d: PrincipalNormalDecomp, tol: float = None) -> str:
    """Extrinsic shape of a principal orbit read off its principal normals"""
    tol = ISOPARAMETRIC_CONFIG['relation_tol'] if tol is None else tol
    if d.count == 1:
        return "round-sphere"
    K = gauss_curvature_table(d)
    off = K[~np.eye(d.count, dtype=bool)]
    if np.all(np.abs(off) <= tol):
        if all(m == 1 for m in d.multiplicities):
            return "product-of-circles"
        return "product-of-spheres"
    return "general"


def orbit_decomposition(action: LinearAction, p, cluster_tol: float = None,
                        seed: int = None) -> PrincipalNormalDecomp:
    return principal_normals(orbit_second_ff(action, p), cluster_tol, seed)


def check_transported_normals(action: LinearAction, p, samples: int = 4, seed: int = None,
                              tol: float = None) -> Dict[str, Any]:
    """
    Spot-check parallelism of principal normals along the orbit: g maps the
    principal normals at p onto those at g p.
    """
    seed = POLAR_CONFIG['seed'] if seed is None else seed
    tol = ISOPARAMETRIC_CONFIG['relation_tol'] if tol is None else tol
    p = as_vec(p, action.ambient_dim)
    base = orbit_decomposition(action, p, seed=seed)
    rng = np.random.default_rng(seed)
    algebra = np.asarray(action.algebra_basis())
    deviation = 0.0
    for _ in range(samples):
        g = expm(np.tensordot(rng.uniform(-np.pi, np.pi, len(algebra)), algebra, axes=1))
        moved = orbit_decomposition(action, g @ p, seed=seed)
        if moved.multiplicities != base.multiplicities and sorted(moved.multiplicities) != sorted(base.multiplicities):
            deviation = float('inf')
            break
        for eta in base.normals:
            image = g @ eta
            deviation = max(deviation, min(float(np.linalg.norm(image - other)) for other in moved.normals))
    return {'passed': deviation < tol, 'max_deviation': deviation, 'samples': samples}
