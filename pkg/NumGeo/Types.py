"""
Types.py - Small dense linear-algebra value types
Vectors, skew generators, rotations and orthonormal frames
"""

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from NumGeo.errors import NonSkewError, DegenerateFrameError
from config import NUMGEO_CONFIG

ArrayLike = Union[Sequence[float], np.ndarray]

ORTHONORMAL_TOL = 1e-10


def as_vec(entries: ArrayLike, dim: int = None) -> np.ndarray:
    """Validate and convert to a finite 1-D float array"""
    v = np.asarray(entries, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ValueError(f"Expected a non-empty vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("Vector entries must be finite")
    if dim is not None and v.size != dim:
        raise ValueError(f"Dimension mismatch: expected {dim}, got {v.size}")
    return v


@dataclass(frozen=True)
class SkewMat:
    """Lie-algebra element of so(d)"""
    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise NonSkewError(f"Generator must be square, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise NonSkewError("Generator entries must be finite")
        residual = np.max(np.abs(m + m.T)) if m.size else 0.0
        if residual > NUMGEO_CONFIG['skew_tol']:
            raise NonSkewError(f"Matrix is not skew-symmetric (max |A + A^T| = {residual:.3e})")
        object.__setattr__(self, 'entries', m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_rows(cls, rows) -> 'SkewMat':
        return cls(np.asarray(rows, dtype=float))


@dataclass(frozen=True)
class OrthoMat:
    """Element of SO(d)"""
    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"Rotation must be square, got shape {m.shape}")
        residual = np.max(np.abs(m.T @ m - np.eye(m.shape[0])))
        if residual > NUMGEO_CONFIG['ortho_tol']:
            raise ValueError(f"Matrix is not orthogonal (max |R^T R - I| = {residual:.3e})")
        if abs(np.linalg.det(m) - 1.0) > NUMGEO_CONFIG['det_tol']:
            raise ValueError("Rotation must have determinant +1")
        object.__setattr__(self, 'entries', m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def apply(self, v: ArrayLike) -> np.ndarray:
        return self.entries @ np.asarray(v, dtype=float)

    def compose(self, other: 'OrthoMat') -> 'OrthoMat':
        return OrthoMat(self.entries @ other.entries)


@dataclass(frozen=True)
class Frame:
    """
    Orthonormal frame of a linear subspace.

    basis holds one basis vector per row, shape (rank, ambient_dim).
    """
    basis: np.ndarray
    ambient_dim: int

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=float).reshape(-1, self.ambient_dim)
        if b.shape[0] > self.ambient_dim:
            raise DegenerateFrameError(
                f"Frame rank {b.shape[0]} exceeds ambient dimension {self.ambient_dim}")
        gram_residual = np.max(np.abs(b @ b.T - np.eye(b.shape[0]))) if b.shape[0] else 0.0
        if gram_residual > ORTHONORMAL_TOL:
            raise DegenerateFrameError(f"Frame is not orthonormal (residual {gram_residual:.3e})")
        object.__setattr__(self, 'basis', b)

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        """Basis vectors as columns, shape (ambient_dim, rank)"""
        return self.basis.T

    def coordinates(self, v: ArrayLike) -> np.ndarray:
        return self.basis @ np.asarray(v, dtype=float)

    def from_coordinates(self, c: ArrayLike) -> np.ndarray:
        return np.asarray(c, dtype=float) @ self.basis

    def contains(self, v: ArrayLike, tol: float = 1e-8) -> bool:
        v = np.asarray(v, dtype=float)
        return float(np.linalg.norm(v - self.from_coordinates(self.coordinates(v)))) <= tol

    def transformed(self, g: np.ndarray) -> 'Frame':
        """Image of the frame under an orthogonal matrix"""
        return Frame(self.basis @ np.asarray(g).T, self.ambient_dim)

    @classmethod
    def empty(cls, ambient_dim: int) -> 'Frame':
        return cls(np.zeros((0, ambient_dim)), ambient_dim)

    @classmethod
    def standard(cls, ambient_dim: int, indices: Sequence[int]) -> 'Frame':
        return cls(np.eye(ambient_dim)[list(indices)], ambient_dim)
