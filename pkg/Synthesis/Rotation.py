"""
Rotation.py - Rotation and multi-rotational hypersurfaces

The block action I_{n0} ⊕ SO(n1) ⊕ ... ⊕ SO(nk) has the section spanned by
the fixed factor and the first basis vector of every block; a profile
written in those coordinates is swept by hyperspherical fiber grids, one
per block. The polar fiber angles include 0 and π so the half-turns are
part of the grid and a half-space profile is closed up by the Weyl group.
"""

import itertools
import logging
from typing import Any, Callable, Dict, List, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from NumGeo.Types import Frame
from NumGeo.FiniteDiff import jacobian, derivative_1d
from NumGeo.Spherical import hyperspherical_grid, fiber_element
from NumGeo.errors import ProfileSmoothnessError, WeylInvarianceError
from PolarAction.Action import LinearAction, block_action, block_offsets, rotation_model_action
from PolarAction.Polarity import SectionSubspace
from Isoparametric.WeylGroup import weyl_group_for_section
from Synthesis.Profile import ProfileHypersurface
from Synthesis.Sweep import GroupElements, sweep, check_weyl_invariance
from config import SYNTHESIS_CONFIG, NUMGEO_CONFIG

logger = logging.getLogger(__name__)


def block_section(block_dims: Sequence[int]) -> SectionSubspace:
    """Fixed factor plus the first axis of each rotating block"""
    offsets = block_offsets(block_dims)
    dim = int(sum(block_dims))
    indices = list(range(int(block_dims[0]))) + offsets[1:]
    frame = Frame.standard(dim, indices)
    coords = np.concatenate([np.zeros(int(block_dims[0])), np.ones(len(block_dims) - 1)])
    return SectionSubspace(frame=frame, basepoint=frame.from_coordinates(coords))


def default_fiber_resolution() -> Tuple[int, int]:
    azimuth = SYNTHESIS_CONFIG['fiber_resolution']
    return azimuth // 2 + 1, azimuth


def fiber_elements(block_dims: Sequence[int],
                   fiber_resolution: Tuple[int, int] = None) -> GroupElements:
    """Product over the blocks of g(φ) = exp(φ_{m-1} E) ... exp(φ_1 E) on each block"""
    polar_points, azimuth_points = fiber_resolution or default_fiber_resolution()
    if azimuth_points % 2:
        logger.warning(f"Odd azimuth resolution {azimuth_points}: the half-turn is not a grid node")
    dim = int(sum(block_dims))
    offsets = block_offsets(block_dims)

    block_grids = []
    shape: List[int] = []
    periodic: List[bool] = []
    for m, offset in zip(block_dims[1:], offsets[1:]):
        grids, flags = hyperspherical_grid(int(m), polar_points, azimuth_points, include_poles=True)
        nodes = [np.array(phi) for phi in itertools.product(*grids)]
        block_grids.append([fiber_element(dim, offset, int(m), phi) for phi in nodes])
        shape.extend(len(g) for g in grids)
        periodic.extend(flags)

    mats = []
    for combo in itertools.product(*block_grids):
        g = np.eye(dim)
        for h in combo:
            g = h @ g
        mats.append(g)
    return GroupElements(np.array(mats), tuple(shape), tuple(periodic))


def axis_graph(curve: Callable[[float], np.ndarray], u0: float, wall_normal,
               step: float = None, tol: float = None) -> Callable[[float], float]:
    """
    Graph f over the tangent line of a curve profile at the axis point c(u0):
    c(u) - c(u0) = s τ + f(s) ν. The tangent must be orthogonal to the wall.
    """
    step = NUMGEO_CONFIG['fd_step'] if step is None else step
    tol = SYNTHESIS_CONFIG['smoothness_tol'] if tol is None else tol
    c0 = np.asarray(curve(u0), dtype=float)
    if c0.size != 2:
        raise ValueError("axis_graph works on curve profiles in a rank-2 section")
    velocity = jacobian(lambda u: np.asarray(curve(u[0]), dtype=float), np.array([u0]), step)[0]
    speed = float(np.linalg.norm(velocity))
    tau = velocity / speed
    wall = np.asarray(wall_normal, dtype=float)
    wall = wall / np.linalg.norm(wall)
    if abs(tau @ wall) < 1.0 - tol:
        raise ProfileSmoothnessError(
            f"Profile tangent at the axis is not orthogonal to the wall (cos angle {abs(tau @ wall):.6f})",
            report={'u0': u0, 'tangent': tau.tolist()})
    nu = np.array([-tau[1], tau[0]])

    def along(u, s):
        return float((np.asarray(curve(u)) - c0) @ tau) - s

    def f(s: float) -> float:
        if s == 0.0:
            return 0.0
        ends = sorted((u0, u0 + 3.0 * s / speed))
        u = brentq(along, ends[0], ends[1], args=(s,), xtol=1e-15, maxiter=200)
        return float((np.asarray(curve(u)) - c0) @ nu)

    return f


def boundary_smoothness_check(graph: Callable[[float], float], order: int = None,
                              step: float = None, tol: float = None,
                              x0: float = 0.0) -> Dict[str, Any]:
    """Odd derivatives of the graph at the axis crossing, orders 1, 3, ..., order"""
    order = SYNTHESIS_CONFIG['smoothness_order'] if order is None else order
    step = SYNTHESIS_CONFIG['smoothness_step'] if step is None else step
    tol = SYNTHESIS_CONFIG['smoothness_tol'] if tol is None else tol
    derivatives = {}
    first_failure = None
    for k in range(1, order + 1, 2):
        value = derivative_1d(graph, x0, k, step)
        derivatives[k] = value
        if first_failure is None and abs(value) >= tol:
            first_failure = k
    return {'passed': first_failure is None, 'order': order, 'step': step, 'tolerance': tol,
            'derivatives': derivatives, 'first_failure_order': first_failure}


def _axis_crossings(L: ProfileHypersurface, radial: Sequence[int],
                    axis_tol: float) -> List[Tuple[int, float, int]]:
    """(node, parameter, wall) where a radial coordinate changes sign between two grid nodes"""
    u = L.grid[0]
    spans = list(zip(range(len(u) - 1), u[:-1], u[1:]))
    if L.periodic[0] and len(u) > 1:
        spans.append((len(u) - 1, u[-1], u[-1] + (u[1] - u[0])))

    def coordinate(t: float, r: int) -> float:
        return float(np.asarray(L.fn(np.array([t])))[r])

    crossings = []
    for i, a, b in spans:
        j = (i + 1) % len(u)
        for r in radial:
            ya, yb = L.flat_coords[i, r], L.flat_coords[j, r]
            if min(abs(ya), abs(yb)) > axis_tol and ya * yb < 0:
                crossings.append((i, float(brentq(coordinate, a, b, args=(r,), xtol=1e-15)), r))
    return crossings


def _evenness_gate(L: ProfileHypersurface, radial: Sequence[int], axis_tol: float,
                   order: int) -> List[Dict[str, Any]]:
    """
    Smoothness gate at every point where a curve profile meets a wall:
    nodes within axis_tol of it, and sign changes between nodes located
    by brentq.
    """
    reports = []
    touching = [(i, r) for i in range(L.node_count) for r in radial
                if abs(L.flat_coords[i, r]) <= axis_tol]
    if L.dim != 1 or L.fn is None:
        if touching:
            logger.warning(f"{L.label}: evenness gate only covers curve profiles; "
                           f"{len(touching)} axis-touching nodes unchecked")
        return reports
    contacts = [(i, float(L.node_params(i)[0]), r) for i, r in touching]
    contacts += _axis_crossings(L, radial, axis_tol)
    for i, u0, r in contacts:
        wall = np.eye(L.section.rank)[r]
        graph = axis_graph(lambda u: L.fn(np.array([u])), u0, wall)
        report = boundary_smoothness_check(graph, order)
        report['node'] = i
        report['parameter'] = u0
        reports.append(report)
        if not report['passed']:
            raise ProfileSmoothnessError(
                f"Profile graph at the axis (parameter {u0:.6g}, near node {i}) has a nonzero "
                f"derivative of odd order {report['first_failure_order']}", report=report)
    return reports
    if L.dim != 1 or L.fn is None:
        logger.warning(f"{L.label}: evenness gate only covers curve profiles; "
                       f"{len(touching)} axis-touching nodes unchecked")
        return reports
    for i, r in touching:
        u0 = float(L.node_params(i)[0])
        wall = np.eye(L.section.rank)[r]
        graph = axis_graph(lambda u: L.fn(np.array([u])), u0, wall)
        report = boundary_smoothness_check(graph, order)
        report['node'] = i
        reports.append(report)
        if not report['passed']:
            raise ProfileSmoothnessError(
                f"Profile graph at axis node {i} has a nonzero derivative of odd order "
                f"{report['first_failure_order']}", report=report)
    return reports


def block_sweep(block_dims: Sequence[int], profile_fn: Callable[[np.ndarray], np.ndarray],
                grid: Sequence, periodic: Sequence[bool], radii: Sequence[float] = None,
                half_space: bool = True, fiber_resolution: Tuple[int, int] = None,
                action: LinearAction = None, label: str = "profile",
                smoothness_order: int = None, invariance_tol: float = None) -> Dict[str, Any]:
    """
    Profile (v0, s_1, ..., s_k) in the block section, block radii r_i
    scaling the radial coordinates s_i, swept by the block fibers.

    Half-space profiles (all s_i >= 0) are closed up by the Weyl group;
    other profiles must be Weyl invariant.
    """
    block_dims = [int(b) for b in block_dims]
    k = len(block_dims) - 1
    radii = np.ones(k) if radii is None else np.asarray(radii, dtype=float)
    if radii.shape != (k,):
        raise ValueError(f"Need one radius per rotating block: {k} blocks, {radii.size} radii")
    if np.any(radii <= 0):
        raise ValueError("Block radii must be positive")
    axis_tol = SYNTHESIS_CONFIG['axis_tol']
    action = block_action(block_dims) if action is None else action
    section = block_section(block_dims)
    n0 = block_dims[0]
    scale = np.concatenate([np.ones(n0), radii])

    def chart(u):
        value = np.asarray(profile_fn(u), dtype=float).ravel()
        if value.size != section.rank:
            raise ValueError(f"Profile returns {value.size} coordinates, section has rank {section.rank}")
        return value * scale

    L = ProfileHypersurface.from_function(section, chart, grid, periodic, label=label)
    W = weyl_group_for_section(action, section)
    radial = list(range(n0, section.rank))

    invariance = None
    if half_space:
        lowest = float(np.min(L.flat_coords[:, radial]))
        if lowest < -axis_tol:
            raise ValueError(f"Profile leaves the half-space (radial coordinate {lowest:.3e})")
    else:
        invariance = check_weyl_invariance(L, W, invariance_tol)
        if not invariance['invariant']:
            raise WeylInvarianceError(
                f"Profile is not invariant under the Weyl group "
                f"(deviation {invariance['max_deviation']:.3e})", report=invariance)

    smoothness = _evenness_gate(L, radial, axis_tol,
                                SYNTHESIS_CONFIG['smoothness_order'] if smoothness_order is None
                                else smoothness_order)
    elements = fiber_elements(block_dims, fiber_resolution)
    swept = sweep(action, L, elements=elements)
    swept.metadata.update({'block_dims': block_dims, 'radii': radii.tolist(),
                           'weyl_order': W.order, 'half_space': half_space})
    return {'action': action, 'swept': swept, 'weyl': W, 'profile': L, 'section': section,
            'smoothness': smoothness, 'invariance': invariance}


def rotation_hypersurface(k: int, n: int, profile_fn: Callable[[np.ndarray], np.ndarray],
                          grid: Sequence, periodic: Sequence[bool], half_space: bool = True,
                          fiber_resolution: Tuple[int, int] = None,
                          label: str = "profile") -> Dict[str, Any]:
    """
    Profile (x_1, ..., x_k, d) in the half-space d >= 0 of R^{k+1}, swept by
    I_k ⊕ SO(n-k+1). The axis is the fixed subspace R^k.
    """
    action = rotation_model_action(k, n)
    return block_sweep([k, n - k + 1], profile_fn, grid, periodic, half_space=half_space,
                       fiber_resolution=fiber_resolution, action=action, label=label)


def multi_rotational(block_dims: Sequence[int], radii: Sequence[float],
                     profile_fn: Callable[[np.ndarray], np.ndarray], grid: Sequence,
                     periodic: Sequence[bool], half_space: bool = True,
                     fiber_resolution: Tuple[int, int] = None, label: str = "profile"):
    """Hypersurface invariant under the product of the block rotations"""
    if len(block_dims) < 2:
        raise ValueError("Need a fixed factor and at least one rotating block")
    return block_sweep(block_dims, profile_fn, grid, periodic, radii=radii, half_space=half_space,
                       fiber_resolution=fiber_resolution, label=label)['swept']
