"""
WeylGroup.py - Focal hyperplanes and the reflection group they generate

Maps act on coordinates of a section frame. `offset` holds the linear frame
coordinates of the point used as coordinate origin: the basepoint p when
the maps act on normal vectors ξ (points p + ξ), zero for linear section
coordinates.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from NumGeo.Types import Frame, as_vec
from NumGeo.LinAlg import kernel_frame
from NumGeo.errors import WeylGroupOverflowError
from PolarAction.Action import LinearAction
from PolarAction.Polarity import SectionSubspace
from Isoparametric.PrincipalNormals import PrincipalNormalDecomp, orbit_decomposition
from config import ISOPARAMETRIC_CONFIG

logger = logging.getLogger(__name__)


@dataclass
class FocalHyperplane:
    """{x : <normal_covector, x> = offset} in normal-space coordinates"""
    normal_covector: np.ndarray
    offset: float = 1.0
    principal_normal: Optional[np.ndarray] = None

    def __post_init__(self):
        self.normal_covector = np.asarray(self.normal_covector, dtype=float)
        if not np.any(self.normal_covector):
            raise ValueError("Focal hyperplane covector must be nonzero")

    def reflection(self) -> 'AffineIsometry':
        w = self.normal_covector
        ww = float(w @ w)
        M = np.eye(w.size) - 2.0 * np.outer(w, w) / ww
        return AffineIsometry(M, 2.0 * self.offset * w / ww)

    def normalized(self) -> np.ndarray:
        v = np.append(self.normal_covector, self.offset)
        return v / np.linalg.norm(v)


@dataclass
class AffineIsometry:
    """x -> matrix @ x + translation"""
    matrix: np.ndarray
    translation: np.ndarray

    def apply(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return x @ self.matrix.T + self.translation

    def compose(self, other: 'AffineIsometry') -> 'AffineIsometry':
        """self ∘ other"""
        return AffineIsometry(self.matrix @ other.matrix,
                              self.matrix @ other.translation + self.translation)

    def distance(self, other: 'AffineIsometry') -> float:
        return max(float(np.max(np.abs(self.matrix - other.matrix))),
                   float(np.max(np.abs(self.translation - other.translation))))

    def image_of(self, h: FocalHyperplane) -> FocalHyperplane:
        w = self.matrix @ h.normal_covector
        return FocalHyperplane(w, h.offset + float(w @ self.translation))

    @classmethod
    def identity(cls, dim: int) -> 'AffineIsometry':
        return cls(np.eye(dim), np.zeros(dim))

    def to_dict(self) -> dict:
        return {'matrix': self.matrix.tolist(), 'translation': self.translation.tolist()}


@dataclass
class WeylGroupRep:
    section_frame: Frame
    elements: List[AffineIsometry]
    generators: List[AffineIsometry]
    offset: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.offset is None:
            self.offset = np.zeros(self.section_frame.rank)

    @property
    def order(self) -> int:
        return len(self.elements)

    def linearized(self) -> 'WeylGroupRep':
        """Same group in coordinates whose origin is the ambient origin"""
        return self.recentered(np.zeros(self.section_frame.rank))

    def recentered(self, new_offset) -> 'WeylGroupRep':
        # y = x + (offset - new_offset)
        shift = np.asarray(self.offset, dtype=float) - np.asarray(new_offset, dtype=float)

        def conj(g):
            return AffineIsometry(g.matrix, g.translation + shift - g.matrix @ shift)

        return WeylGroupRep(self.section_frame, [conj(g) for g in self.elements],
                            [conj(g) for g in self.generators], np.asarray(new_offset, dtype=float))

    def in_frame(self, frame: Frame) -> 'WeylGroupRep':
        """Re-express a linearized group in another frame spanning the same subspace"""
        Q = frame.basis @ self.section_frame.basis.T
        if np.max(np.abs(Q @ Q.T - np.eye(Q.shape[0]))) > 1e-8:
            raise ValueError("Frames do not span the same subspace")
        base = self.linearized()

        def conj(g):
            return AffineIsometry(Q @ g.matrix @ Q.T, Q @ g.translation)

        return WeylGroupRep(frame, [conj(g) for g in base.elements],
                            [conj(g) for g in base.generators], np.zeros(frame.rank))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'order': self.order,
            'section_basis': self.section_frame.basis.tolist(),
            'offset': np.asarray(self.offset).tolist(),
            'elements': [g.to_dict() for g in self.elements]
        }


def focal_hyperplanes(d: PrincipalNormalDecomp, normal: Frame = None,
                      tol: float = None) -> List[FocalHyperplane]:
    """One hyperplane <η_j, ξ> = 1 per nonzero principal normal"""
    normal = d.normal_frame if normal is None else normal
    tol = ISOPARAMETRIC_CONFIG['zero_normal_tol'] if tol is None else tol
    hyperplanes = []
    for j, eta in enumerate(d.normals):
        w = normal.coordinates(eta)
        if np.linalg.norm(w) < tol:
            logger.warning(f"Principal normal {j} vanishes: no focal hyperplane at finite distance")
            continue
        hyperplanes.append(FocalHyperplane(w, 1.0, principal_normal=np.asarray(eta)))
    return hyperplanes


def weyl_group(hyperplanes: Sequence[FocalHyperplane], cap: int = None, tol: float = None,
               section_frame: Frame = None) -> WeylGroupRep:
    """Closure of the focal reflections under composition"""
    cap = ISOPARAMETRIC_CONFIG['weyl_cap'] if cap is None else cap
    tol = ISOPARAMETRIC_CONFIG['weyl_tol'] if tol is None else tol
    if not hyperplanes:
        raise ValueError("weyl_group needs at least one hyperplane")
    dim = hyperplanes[0].normal_covector.size
    if section_frame is None:
        section_frame = Frame(np.eye(dim), dim)

    generators = [h.reflection() for h in hyperplanes]
    elements = [AffineIsometry.identity(dim)]
    frontier = list(elements)
    while frontier:
        fresh = []
        for g in frontier:
            for r in generators:
                candidate = r.compose(g)
                if any(candidate.distance(e) < tol for e in elements):
                    continue
                elements.append(candidate)
                fresh.append(candidate)
                if len(elements) > cap:
                    raise WeylGroupOverflowError(
                        f"group enumeration exceeded cap ({cap} elements)",
                        report={'cap': cap, 'generators': len(generators)})
        frontier = fresh
    logger.debug(f"Weyl group of order {len(elements)} from {len(generators)} reflections")
    return WeylGroupRep(section_frame, elements, generators)


def permutation_deviation(W: WeylGroupRep, hyperplanes: Sequence[FocalHyperplane]) -> float:
    """How far the group is from permuting the hyperplanes (same coordinates assumed)"""
    targets = [h.normalized() for h in hyperplanes]
    deviation = 0.0
    for g in W.elements:
        for h in hyperplanes:
            image = g.image_of(h).normalized()
            deviation = max(deviation, min(min(np.linalg.norm(image - t), np.linalg.norm(image + t))
                                           for t in targets))
    return float(deviation)


def invariant_hyperplane_reduction(d: PrincipalNormalDecomp, W: Optional[WeylGroupRep],
                                   tol: float = None) -> Optional[np.ndarray]:
    """
    Normal direction ξ with <η_j, ξ> = 0 for every principal normal, fixed by
    W (trivially when there are no focal hyperplanes); the submanifold then
    lies in an affine hyperplane orthogonal to ξ.
    """
    tol = ISOPARAMETRIC_CONFIG['relation_tol'] if tol is None else tol
    kernel = kernel_frame(d.normal_coordinates(), tol)
    if kernel.rank == 0:
        return None
    xi = d.normal_frame.from_coordinates(kernel.basis[0])
    if W is None:
        return xi
    xi_w = W.section_frame.coordinates(xi)
    for g in W.elements:
        if np.linalg.norm(g.matrix @ xi_w - xi_w) > tol:
            logger.info("Candidate direction is not fixed by the Weyl group")
            return None
    return xi


def weyl_group_at(action: LinearAction, p, cap: int = None) -> Dict[str, Any]:
    """Decomposition, focal hyperplanes and Weyl group of the orbit through p"""
    p = as_vec(p, action.ambient_dim)
    d = orbit_decomposition(action, p)
    hyperplanes = focal_hyperplanes(d)
    W = weyl_group(hyperplanes, cap=cap, section_frame=d.normal_frame) if hyperplanes else None
    if W is not None:
        W.offset = d.normal_frame.coordinates(p)
    return {'decomposition': d, 'hyperplanes': hyperplanes, 'weyl': W}


def weyl_group_for_section(action: LinearAction, section: SectionSubspace,
                           cap: int = None) -> WeylGroupRep:
    """Weyl group acting on linear coordinates of the given section frame"""
    data = weyl_group_at(action, section.basepoint, cap)
    W = data['weyl']
    if W is None:
        return WeylGroupRep(section.frame, [AffineIsometry.identity(section.rank)],
                            [], np.zeros(section.rank))
    return W.in_frame(section.frame)
