"""
Action.py - Linear isometric actions given by skew Lie-algebra generators
Presets for the block, torus and weighted circle actions used throughout
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from NumGeo.Types import SkewMat
from NumGeo.LinAlg import bracket, so_basis, orthonormalize
from NumGeo.errors import NonSkewError
from config import NUMGEO_CONFIG

logger = logging.getLogger(__name__)


@dataclass
class LinearAction:
    """
    Connected subgroup of SO(ambient_dim) described by its generators.

    The Lie-algebra closure of the generators under brackets is computed
    lazily and cached; it is what orbit tangents are spanned by.
    """
    ambient_dim: int
    generators: List[SkewMat]
    label: str = "action"
    _algebra: Optional[List[np.ndarray]] = field(default=None, init=False, repr=False, compare=False)
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.generators:
            raise ValueError("An action needs at least one generator")
        gens = []
        for i, g in enumerate(self.generators):
            if not isinstance(g, SkewMat):
                try:
                    g = SkewMat(np.asarray(g, dtype=float))
                except NonSkewError as e:
                    raise NonSkewError(f"Generator {i}: {e}") from e
            if g.dim != self.ambient_dim:
                raise ValueError(
                    f"Generator {i} has dimension {g.dim}, expected {self.ambient_dim}")
            gens.append(g)
        self.generators = gens

    @property
    def generator_matrices(self) -> List[np.ndarray]:
        return [g.entries for g in self.generators]

    def algebra_basis(self, tol: float = None) -> List[np.ndarray]:
        """Orthonormal (Frobenius) basis of the bracket closure of the generators"""
        if self._algebra is None:
            self._algebra = _close_under_brackets(self.generator_matrices, self.ambient_dim,
                                                  NUMGEO_CONFIG['rank_tol'] if tol is None else tol)
            logger.debug(f"{self.label}: Lie algebra of dimension {len(self._algebra)}")
        return self._algebra

    @property
    def algebra_dim(self) -> int:
        return len(self.algebra_basis())

    def to_dict(self) -> dict:
        return {
            'label': self.label,
            'ambient_dim': self.ambient_dim,
            'generators': [g.entries.tolist() for g in self.generators]
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'LinearAction':
        return cls(ambient_dim=int(data['ambient_dim']),
                   generators=[SkewMat.from_rows(rows) for rows in data['generators']],
                   label=data.get('label', 'action'))


def _close_under_brackets(generators: List[np.ndarray], dim: int, tol: float) -> List[np.ndarray]:
    cap = dim * (dim - 1) // 2
    frame = orthonormalize([g.ravel() for g in generators], tol=tol, ambient_dim=dim * dim)
    while 0 < frame.rank < cap:
        basis = [b.reshape(dim, dim) for b in frame.basis]
        candidates = [bracket(X, Y).ravel() for i, X in enumerate(basis) for Y in basis[i + 1:]]
        extended = orthonormalize(list(frame.basis) + candidates, tol=tol, ambient_dim=dim * dim)
        if extended.rank == frame.rank:
            break
        frame = extended
    # a zero generator leaves an empty algebra
    return [b.reshape(dim, dim) for b in frame.basis]


def block_action(block_dims: Sequence[int], label: str = None) -> LinearAction:
    """
    I_{n0} ⊕ SO(n1) ⊕ ... ⊕ SO(nk) on R^{n0+n1+...+nk}.

    block_dims[0] is the fixed factor (may be 0); the remaining blocks need n_i >= 2.
    """
    if len(block_dims) < 2:
        raise ValueError("Need a fixed factor and at least one rotating block")
    if any(int(n) < 2 for n in block_dims[1:]):
        raise ValueError(f"Rotating blocks need dimension >= 2, got {list(block_dims)}")
    if int(block_dims[0]) < 0:
        raise ValueError("Fixed factor dimension must be non-negative")
    dim = int(sum(block_dims))
    generators = []
    offset = int(block_dims[0])
    for n in block_dims[1:]:
        for E in so_basis(int(n)):
            G = np.zeros((dim, dim))
            G[offset:offset + n, offset:offset + n] = E
            generators.append(SkewMat(G))
        offset += int(n)
    name = label or "I_{}+".format(block_dims[0]) + "+".join(f"SO({n})" for n in block_dims[1:])
    return LinearAction(ambient_dim=dim, generators=generators, label=name)


def block_offsets(block_dims: Sequence[int]) -> List[int]:
    """Start index of every block, fixed factor included"""
    return [int(sum(block_dims[:i])) for i in range(len(block_dims))]


def rotation_action(n: int) -> LinearAction:
    """Full SO(n) on R^n"""
    return block_action([0, n], label=f"SO({n})")


def rotation_model_action(k: int, n: int) -> LinearAction:
    """I_k ⊕ SO(n-k+1) on R^{n+1}: the rotation-hypersurface model"""
    if not 1 <= k <= n - 1:
        raise ValueError(f"Need 1 <= k <= n-1, got k={k}, n={n}")
    return block_action([k, n - k + 1], label=f"I_{k}+SO({n - k + 1})")


def torus_action(blocks: int = 2) -> LinearAction:
    """SO(2) ⊕ ... ⊕ SO(2) on R^{2*blocks}"""
    return block_action([0] + [2] * blocks, label="+".join(["SO(2)"] * blocks))


def circle_action(weights: Sequence[int], label: str = None) -> LinearAction:
    """
    Circle acting on C^m = R^{2m} by e^{it}(z_1, ..., z_m) = (e^{i w_1 t} z_1, ...).

    weights (1, 1) is the diagonal action on C^2, which is not polar.
    """
    m = len(weights)
    G = np.zeros((2 * m, 2 * m))
    for i, w in enumerate(weights):
        G[2 * i + 1, 2 * i] = float(w)
        G[2 * i, 2 * i + 1] = -float(w)
    name = label or "U(1)" + "".join(f"[{w}]" for w in weights)
    return LinearAction(ambient_dim=2 * m, generators=[SkewMat(G)], label=name)


def trivial_action(dim: int) -> LinearAction:
    """Zero generator: every point is fixed"""
    return LinearAction(ambient_dim=dim, generators=[SkewMat(np.zeros((dim, dim)))], label="trivial")


def action_from_preset(preset: str, **params) -> LinearAction:
    """Preset lookup used by action files"""
    presets = {
        'rotation': lambda: rotation_action(int(params['n'])),
        'rotation-model': lambda: rotation_model_action(int(params['k']), int(params['n'])),
        'torus': lambda: torus_action(int(params.get('blocks', 2))),
        'blocks': lambda: block_action([int(b) for b in params['block_dims']]),
        'circle': lambda: circle_action([int(w) for w in params['weights']])
    }
    if preset not in presets:
        raise ValueError(f"Unknown action preset '{preset}' (known: {sorted(presets)})")
    return presets[preset]()
