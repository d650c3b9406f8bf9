"""
LinAlg.py - Skew exponentials, orthonormal frames and projections
"""

import logging
from typing import Iterable, List, Optional, Union

import numpy as np
from scipy.linalg import expm, null_space, polar

from NumGeo.Types import SkewMat, OrthoMat, Frame, ArrayLike
from config import NUMGEO_CONFIG

logger = logging.getLogger(__name__)


def _skew_entries(A: Union[SkewMat, np.ndarray]) -> np.ndarray:
    if isinstance(A, SkewMat):
        return A.entries
    return SkewMat(np.asarray(A, dtype=float)).entries


def exp_skew(A: Union[SkewMat, np.ndarray], t: float = 1.0) -> OrthoMat:
    """
    Matrix exponential of t*A for skew A.

    The expm result is replaced by its polar factor, the nearest orthogonal
    matrix, so large |t| stays on SO(d) to roundoff.
    """
    m = _skew_entries(A)
    rotation, _ = polar(expm(float(t) * m))
    return OrthoMat(rotation)


def bracket(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return X @ Y - Y @ X


def so_basis(n: int) -> List[np.ndarray]:
    """Standard basis E_ij = e_j e_i^T - e_i e_j^T (i < j) of so(n)"""
    basis = []
    for i in range(n):
        for j in range(i + 1, n):
            E = np.zeros((n, n))
            E[j, i] = 1.0
            E[i, j] = -1.0
            basis.append(E)
    return basis


def orthonormalize(vectors: Iterable[ArrayLike], tol: float = None,
                   ambient_dim: Optional[int] = None) -> Frame:
    """
    Gram-Schmidt with pivoting on the largest remaining residual.

    Residuals below tol (absolute) are treated as dependent and dropped.
    An empty input yields a rank-0 frame; ambient_dim is then required.
    """
    tol = NUMGEO_CONFIG['rank_tol'] if tol is None else tol
    rows = [np.asarray(v, dtype=float).ravel() for v in vectors]
    if not rows:
        if ambient_dim is None:
            raise ValueError("ambient_dim is required for an empty vector list")
        return Frame.empty(ambient_dim)

    dim = rows[0].size
    if any(r.size != dim for r in rows):
        raise ValueError("All vectors must share one ambient dimension")
    if ambient_dim is not None and ambient_dim != dim:
        raise ValueError(f"Dimension mismatch: expected {ambient_dim}, got {dim}")

    residuals = np.array(rows)
    basis: List[np.ndarray] = []
    while len(basis) < dim:
        norms = np.linalg.norm(residuals, axis=1)
        pivot = int(np.argmax(norms))
        if norms[pivot] < tol:
            break
        q = residuals[pivot] / norms[pivot]
        if basis:
            # second pass keeps the frame orthonormal to roundoff
            B = np.array(basis)
            q = q - B.T @ (B @ q)
            q /= np.linalg.norm(q)
        basis.append(q)
        residuals = residuals - np.outer(residuals @ q, q)

    return Frame(np.array(basis).reshape(len(basis), dim), dim)


def complement(F: Frame) -> Frame:
    """Orthonormal frame of the orthogonal complement of span(F)"""
    if F.rank == 0:
        return Frame(np.eye(F.ambient_dim), F.ambient_dim)
    if F.rank == F.ambient_dim:
        return Frame.empty(F.ambient_dim)
    N = null_space(F.basis)
    return Frame(N.T, F.ambient_dim)


def project(v: ArrayLike, F: Frame) -> np.ndarray:
    """Orthogonal projection sum_i <v, b_i> b_i"""
    v = np.asarray(v, dtype=float)
    if v.size != F.ambient_dim:
        raise ValueError(f"Dimension mismatch: vector {v.size}, frame {F.ambient_dim}")
    return F.basis.T @ (F.basis @ v)


def span_residual(F: Frame, G: Frame) -> float:
    """Max distance of F's basis vectors from span(G) and vice versa"""
    res = 0.0
    for a, b in ((F, G), (G, F)):
        for v in a.basis:
            res = max(res, float(np.linalg.norm(v - project(v, b))))
    return res


def kernel_frame(M: np.ndarray, tol: float = None) -> Frame:
    """Kernel of M with an absolute singular-value threshold"""
    tol = NUMGEO_CONFIG['rank_tol'] if tol is None else tol
    M = np.atleast_2d(np.asarray(M, dtype=float))
    dim = M.shape[1]
    _, s, vt = np.linalg.svd(M, full_matrices=True)
    rank = int(np.sum(s > tol))
    return Frame(vt[rank:], dim)
