"""
Sweep.py - G(L): sweeping a profile by the group action

Each profile node x gets a tangent frame T_xL ⊕ T_x(Gx) and a unit normal
before the group is applied; g then maps point, frame and normal at once,
so the swept samples inherit g·(frame) without recomputation.
Axis-touching nodes (orbit dimension below the maximum) sweep to singular
orbits and carry no frame.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import expm
from scipy.spatial import cKDTree
from scipy.stats import qmc

from NumGeo.Types import Frame
from NumGeo.LinAlg import orthonormalize, complement, bracket
from NumGeo.errors import TransversalityError
from PolarAction.Action import LinearAction
from PolarAction.Orbits import orbit_tangent, max_orbit_dimension
from PolarAction.Polarity import SectionSubspace
from Isoparametric.WeylGroup import WeylGroupRep
from Synthesis.Profile import ProfileHypersurface
from config import SYNTHESIS_CONFIG, POLAR_CONFIG

logger = logging.getLogger(__name__)

SAMPLING_MODES = ("halton", "grid", "identity")


@dataclass
class GroupSampling:
    """How group elements are drawn for a sweep"""
    mode: str = "halton"
    count: int = None
    seed: int = None

    def __post_init__(self):
        if self.mode not in SAMPLING_MODES:
            raise ValueError(f"Unknown sampling mode '{self.mode}' (known: {list(SAMPLING_MODES)})")
        self.count = SYNTHESIS_CONFIG['group_samples'] if self.count is None else int(self.count)
        self.seed = POLAR_CONFIG['seed'] if self.seed is None else int(self.seed)
        if self.count < 1:
            raise ValueError("count must be >= 1")

    def to_dict(self) -> dict:
        return {'mode': self.mode, 'count': self.count, 'seed': self.seed}


@dataclass
class GroupElements:
    """Sampled group elements, optionally laid out on a parameter grid"""
    matrices: np.ndarray
    grid_shape: Optional[Tuple[int, ...]] = None
    periodic: Tuple[bool, ...] = ()

    def __post_init__(self):
        self.matrices = np.asarray(self.matrices, dtype=float)
        if self.matrices.ndim != 3:
            raise ValueError("matrices must have shape (count, d, d)")
        if self.grid_shape is not None:
            self.grid_shape = tuple(int(s) for s in self.grid_shape)
            if int(np.prod(self.grid_shape)) != len(self.matrices):
                raise ValueError(f"grid shape {self.grid_shape} does not match "
                                 f"{len(self.matrices)} elements")
            if len(self.periodic) != len(self.grid_shape):
                raise ValueError("One periodic flag per group grid axis")

    @property
    def count(self) -> int:
        return len(self.matrices)

    @classmethod
    def identity(cls, dim: int) -> 'GroupElements':
        return cls(np.eye(dim)[None, :, :])


@dataclass
class PatchInfo:
    """Samples [start, start + prod(shape)) form a parameter grid"""
    start: int
    shape: Tuple[int, ...]
    periodic: Tuple[bool, ...]

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    def to_dict(self) -> dict:
        return {'start': self.start, 'shape': list(self.shape), 'periodic': list(self.periodic)}

    @classmethod
    def from_dict(cls, data: dict) -> 'PatchInfo':
        return cls(int(data['start']), tuple(int(s) for s in data['shape']),
                   tuple(bool(p) for p in data['periodic']))


@dataclass
class SweptHypersurface:
    """
    Sample set of G(L) with frames. tangents has shape (N, n, d) and is NaN
    at singular samples, whose normals are zero.
    """
    points: np.ndarray
    tangents: np.ndarray
    normals: np.ndarray
    regular: np.ndarray
    group_tags: np.ndarray
    profile_tags: np.ndarray
    action: LinearAction
    section: Optional[SectionSubspace] = None
    patches: List[PatchInfo] = field(default_factory=list)
    group_grid_complete: bool = False
    profile: Optional[ProfileHypersurface] = field(default=None, repr=False)
    metadata: Dict[str, Any] = field(default_factory=dict)
    _resolution: Optional[float] = field(default=None, init=False, repr=False)

    def __post_init__(self):
        N, d = self.points.shape
        if self.normals.shape != (N, d) or self.tangents.shape[0] != N:
            raise ValueError("points, tangents and normals must describe the same samples")
        if self.tangents.shape[1:] != (d - 1, d):
            raise ValueError(f"tangent frames must have shape (n, d) = {(d - 1, d)}")

    @property
    def ambient_dim(self) -> int:
        return self.points.shape[1]

    @property
    def dim(self) -> int:
        return self.ambient_dim - 1

    @property
    def sample_count(self) -> int:
        return self.points.shape[0]

    @property
    def resolution(self) -> float:
        """
        Sampling resolution: largest grid-cell diagonal over the patches,
        or a nearest-neighbour estimate where the group directions are not
        gridded.
        """
        if self._resolution is None:
            res = 0.0
            for patch in self.patches:
                res = max(res, _cell_diagonal(self.points[patch.start:patch.start + patch.size],
                                              patch.shape, patch.periodic))
            if not self.group_grid_complete and self.sample_count > 1:
                k = min(self.dim + 2, self.sample_count)
                dists, _ = cKDTree(self.points).query(self.points, k=k)
                res = max(res, float(np.max(dists[:, -1])))
            self._resolution = res
        return self._resolution

    @classmethod
    def from_points(cls, points, action: LinearAction, normals=None,
                    patches: Sequence[PatchInfo] = (), grid_complete: bool = False,
                    section: SectionSubspace = None, metadata: dict = None) -> 'SweptHypersurface':
        """
        Rebuild a sample set from bare points (and normals, zero marking
        singular samples); tangent frames are the normal complements.
        """
        points = np.asarray(points, dtype=float)
        N, d = points.shape
        normals = np.zeros((N, d)) if normals is None else np.array(normals, dtype=float)
        lengths = np.linalg.norm(normals, axis=1)
        regular = lengths > 0.5
        tangents = np.full((N, d - 1, d), np.nan)
        for i in np.flatnonzero(regular):
            nu = normals[i] / lengths[i]
            normals[i] = nu
            tangents[i] = complement(Frame(nu[None, :], d)).basis
        return cls(points=points, tangents=tangents, normals=normals, regular=regular,
                   group_tags=np.zeros(N, dtype=int), profile_tags=np.arange(N),
                   action=action, section=section, patches=list(patches),
                   group_grid_complete=grid_complete, metadata=dict(metadata or {}))


def _cell_diagonal(points: np.ndarray, shape: Tuple[int, ...], periodic: Tuple[bool, ...]) -> float:
    grid = points.reshape(tuple(shape) + (points.shape[-1],))
    squared = np.zeros(shape)
    for axis, is_periodic in enumerate(periodic):
        if shape[axis] < 2:
            continue
        if is_periodic:
            edge = np.linalg.norm(np.roll(grid, -1, axis=axis) - grid, axis=-1)
        else:
            diff = np.linalg.norm(np.diff(grid, axis=axis), axis=-1)
            pad = [(0, 0)] * len(shape)
            pad[axis] = (0, 1)
            edge = np.pad(diff, pad, mode='edge')
        squared = squared + edge ** 2
    return float(np.sqrt(np.max(squared))) if squared.size else 0.0


def _spectral_radius(X: np.ndarray) -> float:
    return float(np.max(np.abs(np.linalg.eigvals(X))))


def random_group_element(action: LinearAction, rng: np.random.Generator) -> np.ndarray:
    """exp of algebra coordinates uniform in the half-turn box"""
    algebra = action.algebra_basis()
    if not algebra:
        return np.eye(action.ambient_dim)
    radii = np.array([np.pi / _spectral_radius(X) for X in algebra])
    coeffs = rng.uniform(-1.0, 1.0, len(algebra)) * radii
    return expm(np.tensordot(coeffs, np.asarray(algebra), axes=1))


def group_elements(action: LinearAction, sampling: GroupSampling) -> GroupElements:
    """
    halton: scrambled Halton points in algebra coordinates mapped through
    exp, preceded by the identity and the half-turns of the generators.
    grid: product grid t in [0, 2π) on each generator; the generators must
    commute.
    """
    dim = action.ambient_dim
    if sampling.mode == "identity":
        return GroupElements.identity(dim)

    if sampling.mode == "grid":
        gens = action.generator_matrices
        for i, j in itertools.combinations(range(len(gens)), 2):
            if np.max(np.abs(bracket(gens[i], gens[j]))) > 1e-12:
                raise ValueError("grid sampling needs commuting generators")
        per_axis = max(1, int(round(sampling.count ** (1.0 / len(gens)))))
        angles = np.arange(per_axis) * 2.0 * np.pi / per_axis
        mats = [expm(np.tensordot(np.array(t), np.asarray(gens), axes=1))
                for t in itertools.product(angles, repeat=len(gens))]
        return GroupElements(np.array(mats), (per_axis,) * len(gens), (True,) * len(gens))

    algebra = action.algebra_basis()
    mats = [np.eye(dim)]
    for G in action.generator_matrices:
        rho = _spectral_radius(G)
        if rho > 0:
            mats.append(expm(np.pi / rho * G))
    if algebra:
        radii = np.array([np.pi / _spectral_radius(X) for X in algebra])
        sampler = qmc.Halton(d=len(algebra), scramble=True, seed=sampling.seed)
        coeffs = (2.0 * sampler.random(sampling.count) - 1.0) * radii
        basis = np.asarray(algebra)
        mats.extend(expm(np.tensordot(c, basis, axes=1)) for c in coeffs)
    return GroupElements(np.array(mats))


def profile_frames(action: LinearAction, L: ProfileHypersurface,
                   tol: float = None) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Tangent frames, outward unit normals and regularity of the profile
    nodes as points of G(L).
    """
    tol = POLAR_CONFIG['rank_tol'] if tol is None else tol
    d = action.ambient_dim
    n = d - 1
    points = L.points
    profile_tangents = L.ambient_tangents
    max_dim = max_orbit_dimension(action)
    centroid = points.mean(axis=0)

    m = len(points)
    tangents = np.full((m, n, d), np.nan)
    normals = np.zeros((m, d))
    regular = np.zeros(m, dtype=bool)
    for i, x in enumerate(points):
        orbit = orbit_tangent(action, x, tol)
        if orbit.rank < max_dim:
            continue
        frame = orthonormalize(list(profile_tangents[i]) + list(orbit.basis), tol=tol, ambient_dim=d)
        if frame.rank < n:
            raise TransversalityError(
                f"Tangent assembly has rank {frame.rank} < {n} at profile sample {i} "
                f"(node {L.node_params(i).tolist()}): the profile is tangent to an orbit direction",
                report={'sample': i, 'rank': frame.rank, 'point': x.tolist()})
        nu = complement(frame).basis[0]
        if nu @ (x - centroid) < 0:
            nu = -nu
        tangents[i] = frame.basis
        normals[i] = nu
        regular[i] = True

    singular = m - int(regular.sum())
    if singular:
        logger.warning(f"{L.label}: {singular} profile samples on singular orbits carry no frame")
    return tangents, normals, regular


def sweep(action: LinearAction, L: ProfileHypersurface, group_sampling: GroupSampling = None,
          elements: GroupElements = None, tol: float = None) -> SweptHypersurface:
    """
    Samples {g·x}: g over the sampled group elements, x over the profile
    nodes. Sample index = group index * profile nodes + profile index.
    """
    if L.section.ambient_dim != action.ambient_dim:
        raise ValueError(f"Profile lives in R^{L.section.ambient_dim}, action on R^{action.ambient_dim}")
    if elements is None:
        elements = group_elements(action, group_sampling or GroupSampling())
    tangents, normals, regular = profile_frames(action, L, tol)
    mats = elements.matrices
    d = action.ambient_dim
    m = L.node_count

    points = np.einsum('gab,mb->gma', mats, L.points).reshape(-1, d)
    swept_tangents = np.einsum('gab,mkb->gmka', mats, tangents).reshape(-1, d - 1, d)
    swept_normals = np.einsum('gab,mb->gma', mats, normals).reshape(-1, d)
    swept_regular = np.tile(regular, elements.count)
    group_tags = np.repeat(np.arange(elements.count), m)
    profile_tags = np.tile(np.arange(m), elements.count)

    if elements.grid_shape is not None:
        patches = [PatchInfo(0, elements.grid_shape + L.grid_shape,
                             tuple(elements.periodic) + L.periodic)]
    else:
        patches = [PatchInfo(g * m, L.grid_shape, L.periodic) for g in range(elements.count)]

    swept = SweptHypersurface(points=points, tangents=swept_tangents, normals=swept_normals,
                              regular=swept_regular, group_tags=group_tags,
                              profile_tags=profile_tags, action=action, section=L.section,
                              patches=patches, group_grid_complete=elements.grid_shape is not None,
                              profile=L)
    logger.info(f"{action.label}: swept {L.label} by {elements.count} group elements "
                f"({swept.sample_count} samples)")
    return swept


def equivariance_check(M: SweptHypersurface, action: LinearAction, trials: int = None,
                       seed: int = None, elements: Sequence[np.ndarray] = None) -> float:
    """
    max over group elements g and samples x of dist(g·x, samples).
    Random elements are drawn unless `elements` is given.
    """
    trials = SYNTHESIS_CONFIG['equivariance_trials'] if trials is None else trials
    seed = POLAR_CONFIG['seed'] if seed is None else seed
    if elements is None:
        rng = np.random.default_rng(seed)
        elements = [random_group_element(action, rng) for _ in range(trials)]
    tree = cKDTree(M.points)
    residual = 0.0
    for g in elements:
        dists, _ = tree.query(M.points @ np.asarray(g).T, workers=-1)
        residual = max(residual, float(np.max(dists)))
    return residual


def equivariance_report(M: SweptHypersurface, action: LinearAction, trials: int = None,
                        seed: int = None) -> Dict[str, Any]:
    trials = SYNTHESIS_CONFIG['equivariance_trials'] if trials is None else trials
    residual = equivariance_check(M, action, trials, seed)
    bound = 2.0 * M.resolution
    return {'passed': residual < bound, 'max_residual': residual, 'bound': bound,
            'resolution': M.resolution, 'trials': trials}


def _section_samples(M: SweptHypersurface, section: SectionSubspace, tol: float) -> np.ndarray:
    coords = section.to_coordinates(M.points)
    off = np.linalg.norm(M.points - section.to_ambient(coords), axis=1)
    scale = np.maximum(1.0, np.linalg.norm(M.points, axis=1))
    return np.flatnonzero(off < tol * scale)


def transversality_check(section: SectionSubspace, M: SweptHypersurface, tol: float = None,
                         slice_tol: float = None) -> Dict[str, Any]:
    """
    At regular samples lying in the section, some section direction must
    leave T_pM: the margin is max_i |<b_i, ν>| over the section basis.
    """
    tol = SYNTHESIS_CONFIG['transversality_tol'] if tol is None else tol
    slice_tol = SYNTHESIS_CONFIG['slice_tol'] if slice_tol is None else slice_tol
    indices = [i for i in _section_samples(M, section, slice_tol) if M.regular[i]]
    failures = []
    min_margin = float('inf')
    for i in indices:
        margin = float(np.max(np.abs(section.frame.basis @ M.normals[i])))
        min_margin = min(min_margin, margin)
        if margin <= tol:
            failures.append(int(i))
    if not indices:
        logger.warning("No regular samples lie in the section: transversality holds vacuously")
    return {'passed': not failures, 'checked': len(indices),
            'min_margin': min_margin if indices else None,
            'failures': failures[:20], 'failure_count': len(failures), 'tolerance': tol}


def _weyl_in_section(W: WeylGroupRep, section: SectionSubspace) -> WeylGroupRep:
    same = (W.section_frame.basis.shape == section.frame.basis.shape
            and np.allclose(W.section_frame.basis, section.frame.basis, atol=1e-12))
    return W.linearized() if same else W.in_frame(section.frame)


def check_weyl_invariance(L: ProfileHypersurface, W: WeylGroupRep,
                          tol: float = None) -> Dict[str, Any]:
    """
    For each w in W and profile sample x, distance from w·x to the profile.
    The nearest sample is refined by projecting out the local tangent
    directions when the image falls within one grid spacing of it.
    """
    tol = SYNTHESIS_CONFIG['invariance_tol'] if tol is None else tol
    W = _weyl_in_section(W, L.section)
    coords = L.flat_coords
    tree = cKDTree(coords)
    if len(coords) > 1:
        spacing = tree.query(coords, k=2)[0][:, 1]
    else:
        spacing = np.zeros(1)
    frames = [np.linalg.qr(t.T)[0].T for t in L.flat_tangents]

    deviation = 0.0
    for w in W.elements:
        images = w.apply(coords)
        dists, idx = tree.query(images)
        for y, raw, j in zip(images, dists, idx):
            delta = y - coords[j]
            along = frames[j] @ delta
            if np.linalg.norm(along) <= spacing[j]:
                raw = float(np.linalg.norm(delta - frames[j].T @ along))
            deviation = max(deviation, float(raw))

    invariant = deviation < tol
    logger.info(f"{L.label}: Weyl invariance deviation {deviation:.3e} over {W.order} elements")
    return {'passed': invariant, 'invariant': invariant, 'max_deviation': deviation,
            'order': W.order, 'tolerance': tol}


def section_slice(M: SweptHypersurface, section: SectionSubspace, W: WeylGroupRep,
                  profile: ProfileHypersurface = None, tol: float = None) -> Dict[str, Any]:
    """
    Samples of M lying in the section, compared with the W-orbit of the
    profile in both directions.
    """
    tol = SYNTHESIS_CONFIG['slice_tol'] if tol is None else tol
    profile = M.profile if profile is None else profile
    if profile is None:
        raise ValueError("section_slice needs the profile the hypersurface was swept from")
    W = _weyl_in_section(W, section)
    orbit = np.vstack([w.apply(profile.flat_coords) for w in W.elements])
    indices = _section_samples(M, section, tol)
    if len(indices) == 0:
        return {'passed': False, 'slice_samples': 0, 'max_deviation': None, 'coverage': None,
                'tolerance': tol}
    sliced = section.to_coordinates(M.points[indices])
    deviation = float(np.max(cKDTree(orbit).query(sliced)[0]))
    coverage = float(np.max(cKDTree(sliced).query(orbit)[0]))
    scale = max(1.0, float(np.max(np.linalg.norm(orbit, axis=1))))
    passed = max(deviation, coverage) <= tol * scale
    return {'passed': passed, 'slice_samples': int(len(indices)), 'max_deviation': deviation,
            'coverage': coverage, 'weyl_order': W.order, 'tolerance': tol}
