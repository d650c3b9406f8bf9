"""
MeshIO.py - ASCII polygon meshes with n+1 coordinates and JSON sidecars

    # polarsynth mesh
    # ambient_dim 4
    v x1 x2 x3 x4
    vn n1 n2 n3 n4      (zero vector at singular samples)
    f i j k             (1-based, grid patches with two or more axes)
    l i j ...           (1-D patches)

Faces triangulate each patch grid on consecutive axis pairs; nothing is
stitched across patches.
"""

import json
import logging
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple, Union

import numpy as np

from NumGeo.errors import ConfigParseError, MetadataError
from Synthesis.Sweep import PatchInfo, SweptHypersurface

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
MESH_HEADER = "# polarsynth mesh"


@dataclass
class MeshData:
    vertices: np.ndarray
    normals: np.ndarray
    faces: np.ndarray
    polylines: List[List[int]] = field(default_factory=list)
    ambient_dim: int = 0


def atomic_write_text(path: PathLike, text: str) -> Path:
    """Write to a temporary file in the target directory, then rename over the target"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def metadata_path(mesh_path: PathLike) -> Path:
    mesh_path = Path(mesh_path)
    return mesh_path.with_name(mesh_path.stem + ".meta.json")


def _format_row(prefix: str, row) -> str:
    return prefix + " " + " ".join(format(float(x), '.12g') for x in row) + "\n"


def patch_triangles(patch: PatchInfo) -> np.ndarray:
    """Triangles (0-based global indices) of the 2-cells on consecutive axis pairs"""
    idx = patch.start + np.arange(patch.size).reshape(patch.shape)
    triangles = []
    for a in range(len(patch.shape) - 1):
        b = a + 1
        if patch.shape[a] < 2 or patch.shape[b] < 2:
            continue
        v00 = idx
        v10 = np.roll(idx, -1, axis=a)
        v01 = np.roll(idx, -1, axis=b)
        v11 = np.roll(v10, -1, axis=b)
        corners = [v00, v10, v11, v01]
        for axis in (a, b):
            if not patch.periodic[axis]:
                keep = np.arange(patch.shape[axis] - 1)
                corners = [np.take(c, keep, axis=axis) for c in corners]
        c00, c10, c11, c01 = (c.ravel() for c in corners)
        triangles.append(np.stack([c00, c10, c11], axis=1))
        triangles.append(np.stack([c00, c11, c01], axis=1))
    if not triangles:
        return np.zeros((0, 3), dtype=int)
    return np.vstack(triangles)


def patch_polyline(patch: PatchInfo) -> List[int]:
    line = list(range(patch.start, patch.start + patch.size))
    if patch.periodic and patch.periodic[0] and patch.size > 2:
        line.append(patch.start)
    return line


def mesh_text(M: SweptHypersurface, name: str = "polarsynth") -> str:
    d = M.ambient_dim
    sb = [f"{MESH_HEADER}\n", f"# ambient_dim {d}\n", f"# vertices {M.sample_count}\n",
          f"g {name}\n"]
    sb.extend(_format_row("v", p) for p in M.points)
    normals = np.where(M.regular[:, None], M.normals, 0.0)
    sb.extend(_format_row("vn", nu) for nu in normals)
    for i, patch in enumerate(M.patches):
        sb.append(f"g {name}_{i}\n")
        if len(patch.shape) == 1:
            line = patch_polyline(patch)
            if len(line) > 1:
                sb.append("l " + " ".join(str(j + 1) for j in line) + "\n")
            continue
        for tri in patch_triangles(patch):
            sb.append("f {0} {1} {2}\n".format(*(tri + 1)))
    return "".join(sb)


def write_mesh(path: PathLike, M: SweptHypersurface, name: str = "polarsynth") -> Path:
    path = atomic_write_text(path, mesh_text(M, name))
    logger.info(f"Wrote {M.sample_count} vertices to {path}")
    return path


def read_mesh(path: PathLike) -> MeshData:
    """Parse a mesh written by write_mesh; malformed lines are reported with their number"""
    path = Path(path)
    if not path.exists():
        raise ConfigParseError(f"Mesh file not found: {path}")
    vertices, normals, faces, polylines = [], [], [], []
    ambient_dim = None
    with open(path, 'r', encoding='utf-8') as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith('g '):
                continue
            if line.startswith('#'):
                parts = line[1:].split()
                if len(parts) == 2 and parts[0] == 'ambient_dim':
                    ambient_dim = int(parts[1])
                continue
            tag, *fields = line.split()
            try:
                if tag == 'v':
                    vertices.append([float(x) for x in fields])
                elif tag == 'vn':
                    normals.append([float(x) for x in fields])
                elif tag == 'f':
                    faces.append([int(x) - 1 for x in fields])
                elif tag == 'l':
                    polylines.append([int(x) - 1 for x in fields])
                else:
                    raise ValueError(f"unknown record '{tag}'")
            except ValueError as e:
                raise ConfigParseError(f"{path}:{lineno}: malformed mesh line ({e})") from e
            if tag in ('v', 'vn') and ambient_dim is not None and len(fields) != ambient_dim:
                raise ConfigParseError(
                    f"{path}:{lineno}: expected {ambient_dim} coordinates, got {len(fields)}")

    if not vertices:
        raise ConfigParseError(f"{path}: mesh has no vertices")
    vertices = np.array(vertices)
    ambient_dim = vertices.shape[1] if ambient_dim is None else ambient_dim
    normals = np.array(normals) if normals else np.zeros_like(vertices)
    if normals.shape != vertices.shape:
        raise ConfigParseError(f"{path}: {len(normals)} normals for {len(vertices)} vertices")
    faces = np.array(faces, dtype=int).reshape(-1, 3)
    return MeshData(vertices=vertices, normals=normals, faces=faces, polylines=polylines,
                    ambient_dim=ambient_dim)


def write_metadata(mesh_path: PathLike, metadata: Dict[str, Any]) -> Path:
    return atomic_write_text(metadata_path(mesh_path),
                             json.dumps(metadata, indent=2, sort_keys=True) + "\n")


def read_metadata(mesh_path: PathLike) -> Dict[str, Any]:
    path = metadata_path(mesh_path)
    if not path.exists():
        raise MetadataError(f"Sidecar metadata not found: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise MetadataError(f"{path}:{e.lineno}: invalid metadata JSON ({e.msg})") from e


def projected_obj_text(mesh: MeshData, keep: Sequence[int] = (0, 1, 2),
                       name: str = "projection") -> str:
    """Plain 3-D Wavefront text of the mesh with the other coordinates dropped"""
    keep = list(keep)
    if len(keep) != 3 or any(not 0 <= k < mesh.ambient_dim for k in keep):
        raise ConfigParseError(f"Need three coordinate indices below {mesh.ambient_dim}, got {keep}")
    sb = [f"g {name}\n"]
    sb.extend(_format_row("v", v[keep]) for v in mesh.vertices)
    for tri in mesh.faces:
        sb.append("f {0} {1} {2}\n".format(*(tri + 1)))
    for line in mesh.polylines:
        sb.append("l " + " ".join(str(j + 1) for j in line) + "\n")
    return "".join(sb)


def mesh_patches(metadata: Dict[str, Any]) -> Tuple[List[PatchInfo], bool]:
    patches = [PatchInfo.from_dict(p) for p in metadata.get('patches', [])]
    return patches, bool(metadata.get('group_grid_complete', False))
