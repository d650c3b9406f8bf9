"""
Orbits.py - Killing fields, orbit tangents, regular points and orbit types
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize_scalar

from NumGeo.Types import Frame, as_vec
from NumGeo.LinAlg import orthonormalize, complement
from PolarAction.Action import LinearAction
from config import POLAR_CONFIG

logger = logging.getLogger(__name__)

ORBIT_KINDS = ("principal", "exceptional-suspect", "singular")


@dataclass
class OrbitClass:
    """Orbit type of a point; exceptional detection is a sampled heuristic"""
    kind: str
    orbit_dim: int
    max_orbit_dim: int
    witness: Optional[List[List[float]]] = field(default=None)

    def __post_init__(self):
        if self.kind not in ORBIT_KINDS:
            raise ValueError(f"Unknown orbit kind '{self.kind}'")
        if (self.kind == "singular") != (self.orbit_dim < self.max_orbit_dim):
            raise ValueError("singular must coincide with a non-maximal orbit dimension")


def killing_field(action: LinearAction, gen_index: int, q) -> np.ndarray:
    """Value A_i q of the Killing field induced by generator i"""
    if not 0 <= gen_index < len(action.generators):
        raise IndexError(f"Generator index {gen_index} out of range "
                         f"(action has {len(action.generators)} generators)")
    q = as_vec(q, action.ambient_dim)
    return action.generators[gen_index].entries @ q


def orbit_tangent(action: LinearAction, p, tol: float = None) -> Frame:
    """Frame of T_p(Gp) = span{X p : X in the Lie algebra}"""
    tol = POLAR_CONFIG['rank_tol'] if tol is None else tol
    p = as_vec(p, action.ambient_dim)
    vectors = [X @ p for X in action.algebra_basis()]
    return orthonormalize(vectors, tol=tol, ambient_dim=action.ambient_dim)


def orbit_dimension(action: LinearAction, p, tol: float = None) -> int:
    return orbit_tangent(action, p, tol).rank


def find_regular_point(action: LinearAction, sampler_seed: int = None,
                       samples: int = None) -> np.ndarray:
    """
    Seeded uniform sample on the unit sphere attaining the largest orbit
    dimension seen among `samples` draws.
    """
    seed = POLAR_CONFIG['seed'] if sampler_seed is None else sampler_seed
    samples = POLAR_CONFIG['regular_samples'] if samples is None else samples
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    points = rng.standard_normal((samples, action.ambient_dim))
    points /= np.linalg.norm(points, axis=1, keepdims=True)
    dims = [orbit_dimension(action, q) for q in points]
    best = int(np.argmax(dims))
    if dims[best] == 0:
        logger.warning(f"{action.label}: every sampled orbit is a point (trivial action?)")
    return points[best]


def max_orbit_dimension(action: LinearAction, sampler_seed: int = None,
                        samples: int = None) -> int:
    key = ('max_orbit_dim', sampler_seed, samples)
    if key not in action._cache:
        action._cache[key] = orbit_dimension(
            action, find_regular_point(action, sampler_seed, samples))
    return action._cache[key]


def orbit_span(action: LinearAction, p, tol: float = None) -> dict:
    """
    Smallest invariant subspace containing p, i.e. the linear span of Gp.

    When the orbit is not full, the action should fix the orthogonal
    complement of the span; `complement_residual` measures that.
    """
    tol = POLAR_CONFIG['rank_tol'] if tol is None else tol
    p = as_vec(p, action.ambient_dim)
    algebra = action.algebra_basis()
    frame = orthonormalize([p], tol=tol, ambient_dim=action.ambient_dim)
    while True:
        vectors = list(frame.basis) + [X @ v for X in algebra for v in frame.basis]
        grown = orthonormalize(vectors, tol=tol, ambient_dim=action.ambient_dim)
        if grown.rank == frame.rank:
            break
        frame = grown
    rest = complement(frame)
    residual = max((float(np.linalg.norm(X @ w)) for X in algebra for w in rest.basis), default=0.0)
    return {
        'frame': frame,
        'full': frame.rank == action.ambient_dim,
        'complement_residual': residual,
        'trivial_on_complement': residual < tol
    }


def classify_orbit(action: LinearAction, p, isotropy_samples: int = None,
                   seed: int = None, tol: float = None) -> OrbitClass:
    """
    principal / exceptional-suspect / singular.

    Non-singular orbits are searched for a sampled group element exp(tX)
    fixing p while moving a normal vector. The search scans t along random
    one-parameter subgroups and refines near-returns; it can miss isotropy
    and therefore only ever reports a suspicion.
    """
    isotropy_samples = POLAR_CONFIG['isotropy_samples'] if isotropy_samples is None else isotropy_samples
    seed = POLAR_CONFIG['seed'] if seed is None else seed
    fix_tol = POLAR_CONFIG['fix_tol'] if tol is None else tol
    p = as_vec(p, action.ambient_dim)

    dim = orbit_dimension(action, p)
    max_dim = max(max_orbit_dimension(action), dim)
    if dim < max_dim:
        return OrbitClass(kind="singular", orbit_dim=dim, max_orbit_dim=max_dim)

    algebra = action.algebra_basis()
    if not algebra:
        return OrbitClass(kind="principal", orbit_dim=dim, max_orbit_dim=max_dim)

    normal = complement(orbit_tangent(action, p))
    rng = np.random.default_rng(seed)
    scan = POLAR_CONFIG['isotropy_scan']
    for _ in range(isotropy_samples):
        X = np.tensordot(rng.standard_normal(len(algebra)), np.asarray(algebra), axes=1)
        # unit spectral radius: every rotation angle of exp(tX) is at most t
        X /= np.max(np.abs(np.linalg.eigvals(X)))
        g = _find_fixing_element(X, p, scan, fix_tol)
        if g is None:
            continue
        moved = max(float(np.linalg.norm(g @ v - v)) for v in normal.basis)
        if moved > np.sqrt(fix_tol):
            logger.info(f"{action.label}: isotropy element moves a normal vector by {moved:.3e}")
            return OrbitClass(kind="exceptional-suspect", orbit_dim=dim,
                              max_orbit_dim=max_dim, witness=g.tolist())
    return OrbitClass(kind="principal", orbit_dim=dim, max_orbit_dim=max_dim)


def _find_fixing_element(X: np.ndarray, p: np.ndarray, scan: int, fix_tol: float):
    t_max = 4.0 * np.pi
    dt = t_max / scan
    step = expm(dt * X)
    g = np.eye(X.shape[0])
    distances = []
    for _ in range(scan):
        g = step @ g
        distances.append(float(np.linalg.norm(g @ p - p)))
    distances = np.array(distances)
    for i in range(1, scan - 1):
        if distances[i] <= distances[i - 1] and distances[i] <= distances[i + 1]:
            t0 = (i + 1) * dt
            res = minimize_scalar(lambda t: np.linalg.norm(expm(t * X) @ p - p),
                                  bounds=(t0 - dt, t0 + dt), method='bounded',
                                  options={'xatol': 1e-12})
            if res.fun < fix_tol:
                g_fix = expm(res.x * X)
                if np.linalg.norm(g_fix - np.eye(X.shape[0])) > np.sqrt(fix_tol):
                    return g_fix
    return None
