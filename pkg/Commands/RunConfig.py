"""
RunConfig.py - Input files and run configuration for the command line

Action files, profile files and run configs are JSON. Syntax errors are
reported as ConfigParseError with the file name and line number.

Action file:
    {"preset": "rotation-model", "params": {"k": 1, "n": 3}}
    {"label": "...", "ambient_dim": 4, "generators": [[[0, -1, ...], ...]],
     "section": [[1, 0, 0, 0], [0, 0, 1, 0]]}

Profile file:
    {"label": "rotation-torus",
     "curve": {"kind": "circle", "center": [0, 3], "radius": 1},
     "resolution": 32, "fiber_resolution": [17, 32]}

Angles in profile files are given in multiples of π (`arc_pi`).
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from NumGeo.Types import Frame
from NumGeo.errors import ConfigParseError
from PolarAction.Action import LinearAction, action_from_preset
from PolarAction.Polarity import SectionSubspace, regular_section
from Synthesis.Profile import uniform_grid
from Synthesis.Rotation import block_section
from config import SYNTHESIS_CONFIG, NUMGEO_CONFIG, POLAR_CONFIG, default_output_dir

logger = logging.getLogger(__name__)

COMMANDS = ("action-info", "orbit", "synth", "verify", "export", "benchmark")
SYNTH_MODES = ("sweep", "rotation", "multirot", "warped")
CURVE_KINDS = ("circle", "polynomial")


def load_json(path) -> Any:
    """JSON document with parse errors located by line"""
    path = Path(path)
    if not path.exists():
        raise ConfigParseError(f"File not found: {path}")
    with open(path, 'r', encoding='utf-8') as f:
        text = f.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigParseError(f"{path}:{e.lineno}: {e.msg} (column {e.colno})") from e


def _require(data: Dict[str, Any], key: str, path) -> Any:
    if key not in data:
        raise ConfigParseError(f"{path}: missing key '{key}'")
    return data[key]


def _preset_blocks(preset: str, params: Dict[str, Any]) -> Optional[List[int]]:
    if preset == 'rotation':
        return [0, int(params['n'])]
    if preset == 'rotation-model':
        k, n = int(params['k']), int(params['n'])
        return [k, n - k + 1]
    if preset == 'torus':
        return [0] + [2] * int(params.get('blocks', 2))
    if preset == 'blocks':
        return [int(b) for b in params['block_dims']]
    return None


@dataclass
class ActionSpec:
    """A parsed action file"""
    action: LinearAction
    block_dims: Optional[List[int]] = None
    section: Optional[SectionSubspace] = None
    source: str = ""

    def sweep_section(self, seed: int = None) -> SectionSubspace:
        """Explicit section, else the block section, else the normal space at a regular point"""
        if self.section is not None:
            return self.section
        if self.block_dims is not None:
            return block_section(self.block_dims)
        return regular_section(self.action, seed)

    def to_dict(self) -> Dict[str, Any]:
        data = {'action': self.action.to_dict(), 'block_dims': self.block_dims, 'source': self.source}
        if self.section is not None:
            data['section'] = self.section.to_dict()
        return data


def load_action(path) -> ActionSpec:
    return action_from_dict(load_json(path), path)


def action_from_dict(data: Any, path='<metadata>') -> ActionSpec:
    if not isinstance(data, dict):
        raise ConfigParseError(f"{path}: action file must hold a JSON object")
    try:
        if 'preset' in data:
            params = data.get('params', {})
            action = action_from_preset(data['preset'], **params)
            blocks = _preset_blocks(data['preset'], params)
        else:
            action = LinearAction(ambient_dim=int(_require(data, 'ambient_dim', path)),
                                  generators=[np.asarray(g, dtype=float)
                                              for g in _require(data, 'generators', path)],
                                  label=data.get('label', Path(path).stem))
            blocks = [int(b) for b in data['block_dims']] if 'block_dims' in data else None
        if 'label' in data:
            action.label = data['label']
        section = None
        if 'section' in data:
            basis = np.asarray(data['section'], dtype=float)
            frame = Frame(basis, action.ambient_dim)
            section = SectionSubspace(frame, frame.from_coordinates(np.ones(frame.rank)))
    except ConfigParseError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigParseError(f"{path}: invalid action description ({e})") from e
    logger.debug(f"Loaded action {action.label} on R^{action.ambient_dim} from {path}")
    return ActionSpec(action=action, block_dims=blocks, section=section, source=str(path))


@dataclass
class CurveSpec:
    """Parametrized profile curve in section coordinates"""
    kind: str
    params: Dict[str, Any]

    def __post_init__(self):
        if self.kind not in CURVE_KINDS:
            raise ConfigParseError(f"Unknown curve kind '{self.kind}' (known: {list(CURVE_KINDS)})")
        if self.kind == 'circle' and float(self.params.get('radius', 0)) <= 0:
            raise ConfigParseError("Circle profile needs a positive radius")
        if self.kind == 'polynomial' and not self.params.get('coefficients'):
            raise ConfigParseError("Polynomial profile needs per-coordinate coefficients")

    @property
    def bounds(self) -> Tuple[float, float]:
        if self.kind == 'circle':
            a, b = self.params.get('arc_pi', [0.0, 2.0])
            return float(a) * np.pi, float(b) * np.pi
        a, b = self.params.get('range', [-1.0, 1.0])
        return float(a), float(b)

    @property
    def periodic(self) -> bool:
        if self.kind == 'circle':
            a, b = self.bounds
            return bool(np.isclose(b - a, 2.0 * np.pi))
        return bool(self.params.get('periodic', False))

    def point(self, u: float) -> np.ndarray:
        if self.kind == 'circle':
            center = np.asarray(self.params.get('center', [0.0, 0.0]), dtype=float)
            return center + float(self.params['radius']) * np.array([np.cos(u), np.sin(u)])
        # coefficients in increasing powers
        return np.array([np.polynomial.polynomial.polyval(u, c)
                         for c in self.params['coefficients']], dtype=float)

    def chart(self) -> Callable[[np.ndarray], np.ndarray]:
        return lambda w: self.point(float(np.atleast_1d(w)[0]))

    def grid(self, resolution: int) -> Tuple[np.ndarray]:
        a, b = self.bounds
        return (uniform_grid(a, b, resolution, self.periodic),)


@dataclass
class ProfileSpec:
    label: str
    curve: CurveSpec
    resolution: Optional[int] = None
    fiber_resolution: Optional[Tuple[int, int]] = None
    radii: Optional[List[float]] = None
    block_dims: Optional[List[int]] = None
    half_space: Optional[bool] = None
    group_sampling: Dict[str, Any] = field(default_factory=dict)
    warped: Dict[str, Any] = field(default_factory=dict)


def load_profile(path) -> ProfileSpec:
    return profile_from_dict(load_json(path), path)


def profile_from_dict(data: Any, path='<metadata>') -> ProfileSpec:
    if not isinstance(data, dict):
        raise ConfigParseError(f"{path}: profile file must hold a JSON object")
    curve = _require(data, 'curve', path)
    try:
        spec = ProfileSpec(
            label=data.get('label', Path(path).stem),
            curve=CurveSpec(kind=_require(curve, 'kind', path),
                            params={k: v for k, v in curve.items() if k != 'kind'}),
            resolution=int(data['resolution']) if 'resolution' in data else None,
            fiber_resolution=tuple(int(x) for x in data['fiber_resolution'])
            if 'fiber_resolution' in data else None,
            radii=[float(r) for r in data['radii']] if 'radii' in data else None,
            block_dims=[int(b) for b in data['block_dims']] if 'block_dims' in data else None,
            half_space=data.get('half_space'),
            group_sampling=dict(data.get('group_sampling', {})),
            warped=dict(data.get('warped', {})))
    except (TypeError, ValueError) as e:
        raise ConfigParseError(f"{path}: invalid profile description ({e})") from e
    if spec.fiber_resolution is not None and len(spec.fiber_resolution) != 2:
        raise ConfigParseError(f"{path}: fiber_resolution needs [polar, azimuth] point counts")
    return spec


@dataclass
class RunConfig:
    """
    Everything one CLI invocation needs. `tol` has no default: pass/fail
    checks only run with an explicit tolerance.
    """
    command: str
    tol: Optional[float] = None
    seed: int = None
    fd_step: float = None
    resolution: int = None
    output_dir: Path = None
    action_path: Optional[Path] = None
    profile_path: Optional[Path] = None
    mode: Optional[str] = None
    point: Optional[List[float]] = None
    mesh_path: Optional[Path] = None
    keep: Sequence[int] = (0, 1, 2)
    verbose: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigParseError(f"Unknown command '{self.command}'")
        self.seed = POLAR_CONFIG['seed'] if self.seed is None else int(self.seed)
        self.fd_step = NUMGEO_CONFIG['fd_step'] if self.fd_step is None else float(self.fd_step)
        self.resolution = None if self.resolution is None else int(self.resolution)
        self.output_dir = default_output_dir() if self.output_dir is None else Path(self.output_dir)
        self.tol = None if self.tol is None else float(self.tol)
        if self.command in ("action-info", "orbit", "synth", "verify") and self.tol is None:
            raise ConfigParseError("A tolerance is required: pass --tol or set 'tol' in the run config")
        if self.tol is not None and self.tol <= 0:
            raise ConfigParseError(f"Tolerance must be positive, got {self.tol}")
        if self.fd_step <= 0:
            raise ConfigParseError(f"Finite-difference step must be positive, got {self.fd_step}")
        if self.resolution is not None and self.resolution < 3:
            raise ConfigParseError(f"Resolution must be at least 3, got {self.resolution}")
        if self.command == "synth" and self.mode not in SYNTH_MODES:
            raise ConfigParseError(f"synth needs --mode in {list(SYNTH_MODES)}, got {self.mode}")
        for name in ('action_path', 'profile_path', 'mesh_path'):
            value = getattr(self, name)
            if value is not None:
                value = Path(value)
                setattr(self, name, value)
                if not value.exists():
                    raise ConfigParseError(f"File not found: {value}")

    @classmethod
    def from_args(cls, args) -> 'RunConfig':
        """argparse namespace, with an optional --config JSON filling unset values"""
        values = {}
        config_file = getattr(args, 'config', None)
        if config_file:
            data = load_json(config_file)
            if not isinstance(data, dict):
                raise ConfigParseError(f"{config_file}: run config must hold a JSON object")
            aliases = {'action': 'action_path', 'profile': 'profile_path',
                       'mesh': 'mesh_path', 'out': 'output_dir'}
            for key, value in data.items():
                key = key.replace('-', '_')
                values[aliases.get(key, key)] = value
        for key in ('tol', 'seed', 'fd_step', 'resolution', 'mode', 'point', 'keep'):
            arg = getattr(args, key, None)
            if arg is not None:
                values[key] = arg
        for key, arg_name in (('action_path', 'action'), ('profile_path', 'profile'),
                              ('mesh_path', 'mesh'), ('output_dir', 'out')):
            arg = getattr(args, arg_name, None)
            if arg is not None:
                values[key] = arg
        try:
            return cls(command=args.command, verbose=bool(getattr(args, 'verbose', False)),
                       **{k: v for k, v in values.items()
                          if k in cls.__dataclass_fields__ and k not in ('command', 'verbose')})
        except (TypeError, ValueError) as e:
            if isinstance(e, ConfigParseError):
                raise
            raise ConfigParseError(f"Invalid run configuration ({e})") from e

    def profile_resolution(self, profile: ProfileSpec) -> int:
        """--resolution, else the profile file, else the configured default"""
        if self.resolution is not None:
            return self.resolution
        if profile.resolution is not None:
            return profile.resolution
        return SYNTHESIS_CONFIG['profile_resolution']

    def to_dict(self) -> Dict[str, Any]:
        return {
            'command': self.command,
            'tol': self.tol,
            'seed': self.seed,
            'fd_step': self.fd_step,
            'resolution': self.resolution,
            'mode': self.mode,
            'action': self.action_path.name if self.action_path else None,
            'profile': self.profile_path.name if self.profile_path else None,
            'mesh': self.mesh_path.name if self.mesh_path else None
        }
