"""
OrbitDiagnostics.py - Orbits as submanifolds of a sampled invariant hypersurface

The orbit second form is the closed-form one from Isoparametric; its
components along the directions of T_pM normal to the orbit give the
shape operators of the orbit inside M.
"""

import logging
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from scipy.linalg import expm

from NumGeo.Types import Frame, as_vec
from NumGeo.LinAlg import orthonormalize
from NumGeo.FiniteDiff import jacobian
from NumGeo.errors import GeometryError
from PolarAction.Action import LinearAction
from PolarAction.Orbits import orbit_tangent, max_orbit_dimension
from PolarAction.Polarity import fixed_subspace
from Isoparametric.SecondForm import orbit_second_ff, shape_operator, tangent_lift
from Isoparametric.PrincipalNormals import (
    principal_normals, constant_curvature, plane_curvatures, orbit_geometry
)
from Synthesis.Sweep import SweptHypersurface
from config import ANALYSIS_CONFIG, ISOPARAMETRIC_CONFIG

logger = logging.getLogger(__name__)


def orbit_normals_in_M(M: SweptHypersurface, index: int, orbit: Frame) -> Frame:
    """Directions of T_pM orthogonal to the orbit tangent"""
    T = M.tangents[index]
    residual = T - (T @ orbit.basis.T) @ orbit.basis
    return orthonormalize(residual, ambient_dim=M.ambient_dim)


def _umbilic_deviation(A: np.ndarray) -> float:
    m = A.shape[0]
    scale = float(np.max(np.abs(A)))
    if scale < 1e-14:
        return 0.0
    return float(np.max(np.abs(A - np.trace(A) / m * np.eye(m)))) / scale


def orbit_umbilicity(action: LinearAction, M: SweptHypersurface, p_sample: int,
                     tol: float = None) -> Dict[str, Any]:
    """
    Deviation ||A - (tr A / m) I||_inf / ||A||_inf of the orbit shape
    operators along the normals of the orbit inside M.
    """
    tol = ANALYSIS_CONFIG['umbilic_tol'] if tol is None else tol
    if not M.regular[p_sample]:
        raise GeometryError(f"Sample {p_sample} lies on a singular orbit")
    p = M.points[p_sample]
    ff = orbit_second_ff(action, p)
    m = ff.orbit_dim
    if m == 1:
        return {'umbilic_in_M': True, 'deviation': 0.0, 'orbit_dim': 1, 'sample': p_sample}
    directions = orbit_normals_in_M(M, p_sample, ff.tangent)
    deviation = 0.0
    for xi in directions.basis:
        deviation = max(deviation, _umbilic_deviation(shape_operator(ff, xi)))
    return {'umbilic_in_M': deviation < tol, 'deviation': deviation, 'orbit_dim': m,
            'sample': p_sample}


def orbit_geodesic_in_M(action: LinearAction, M: SweptHypersurface, p_sample: int,
                        tol: float = None) -> Dict[str, Any]:
    """
    Ambient projection approximation of total geodesy of the orbit in M:
    the orbit second form has no component along T_pM.
    """
    tol = ANALYSIS_CONFIG['geodesic_tol'] if tol is None else tol
    p = M.points[p_sample]
    ff = orbit_second_ff(action, p)
    directions = orbit_normals_in_M(M, p_sample, ff.tangent)
    size = max((float(np.max(np.abs(shape_operator(ff, xi)))) for xi in directions.basis), default=0.0)
    return {'totally_geodesic': size < tol, 'max_component': size, 'sample': p_sample}


def _brioschi(E, F, G, Eu, Ev, Fu, Fv, Gu, Gv, Evv, Fuv, Guu) -> float:
    first = np.array([[-0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev],
                      [Fv - 0.5 * Gu, E, F],
                      [0.5 * Gv, F, G]])
    second = np.array([[0.0, 0.5 * Ev, 0.5 * Gu],
                       [0.5 * Ev, E, F],
                       [0.5 * Gu, F, G]])
    return float((np.linalg.det(first) - np.linalg.det(second)) / (E * G - F * F) ** 2)


def orbit_sectional_curvature_fd(action: LinearAction, p, metric_step: float = None,
                                 derivative_step: float = None) -> float:
    """
    Intrinsic curvature of a 2-dimensional orbit from the chart
    (s, t) -> exp(sA) exp(tB) p by the Brioschi formula.
    """
    metric_step = ANALYSIS_CONFIG['curvature_metric_step'] if metric_step is None else metric_step
    h = ANALYSIS_CONFIG['curvature_derivative_step'] if derivative_step is None else derivative_step
    p = as_vec(p, action.ambient_dim)
    tangent = orbit_tangent(action, p)
    if tangent.rank != 2:
        raise ValueError(f"Brioschi curvature needs a 2-dimensional orbit, got dimension {tangent.rank}")
    lifts = np.tensordot(tangent_lift(action, p, tangent), np.asarray(action.algebra_basis()), axes=1)
    A, B = lifts

    def chart(w):
        return expm(w[0] * A) @ expm(w[1] * B) @ p

    def metric(s, t):
        J = jacobian(chart, np.array([s, t]), metric_step)
        g = J @ J.T
        return g[0, 0], g[0, 1], g[1, 1]

    values = {(i, j): metric(i * h, j * h) for i in (-1, 0, 1) for j in (-1, 0, 1)}

    def d_s(k):
        return (values[(1, 0)][k] - values[(-1, 0)][k]) / (2 * h)

    def d_t(k):
        return (values[(0, 1)][k] - values[(0, -1)][k]) / (2 * h)

    E, F, G = values[(0, 0)]
    Evv = (values[(0, 1)][0] - 2 * E + values[(0, -1)][0]) / h ** 2
    Guu = (values[(1, 0)][2] - 2 * G + values[(-1, 0)][2]) / h ** 2
    Fuv = (values[(1, 1)][1] - values[(1, -1)][1] - values[(-1, 1)][1] + values[(-1, -1)][1]) / (4 * h * h)
    return _brioschi(E, F, G, d_s(0), d_t(0), d_s(1), d_t(1), d_s(2), d_t(2), Evv, Fuv, Guu)


def gauss_consistency(action: LinearAction, p, tol: float = 1e-3) -> Dict[str, Any]:
    """Brioschi curvature of a 2-dimensional orbit against the Gauss equation"""
    p = as_vec(p, action.ambient_dim)
    ff = orbit_second_ff(action, p)
    a = ff.values
    gauss = float(a[0, 0] @ a[1, 1] - a[0, 1] @ a[0, 1])
    fd = orbit_sectional_curvature_fd(action, p)
    return {'passed': abs(fd - gauss) < tol, 'fd': fd, 'gauss': gauss, 'deviation': abs(fd - gauss)}


def _principal_samples(action: LinearAction, M: SweptHypersurface, count: int) -> List[int]:
    max_dim = max_orbit_dimension(action)
    candidates = np.flatnonzero(M.regular)
    picked = []
    for i in candidates[np.linspace(0, len(candidates) - 1, min(count * 4, len(candidates))).astype(int)]:
        if orbit_tangent(action, M.points[i]).rank == max_dim:
            picked.append(int(i))
        if len(picked) == count:
            break
    return picked


def rotation_structure_report(action: LinearAction, M: SweptHypersurface,
                              samples: Optional[Sequence[int]] = None,
                              tol: float = None) -> Dict[str, Any]:
    """
    Sufficient conditions for G(L) to be a rotation hypersurface, evaluated
    on sampled principal orbits:
      (i)   a principal orbit totally geodesic in M
      (ii)  cohomogeneity of G on M equal to n - 1
      (iii) principal orbits umbilical in M
      (iv)  a principal orbit with nonzero constant sectional curvature
      (v)   a principal orbit with positive sectional curvatures
    """
    tol = ANALYSIS_CONFIG['umbilic_tol'] if tol is None else tol
    relation_tol = ISOPARAMETRIC_CONFIG['relation_tol']
    n = M.dim
    count = ANALYSIS_CONFIG['orbit_samples']
    samples = _principal_samples(action, M, count) if samples is None else list(samples)
    if not samples:
        raise GeometryError("No principal-orbit samples on the hypersurface")

    orbit_dim = max_orbit_dimension(action)
    k = n - orbit_dim
    umbilic = [orbit_umbilicity(action, M, i, tol) for i in samples]
    geodesic = [orbit_geodesic_in_M(action, M, i) for i in samples]

    constant, positive, shapes = [], [], []
    for i in samples:
        d = principal_normals(orbit_second_ff(action, M.points[i]))
        c = constant_curvature(d, relation_tol)
        constant.append(c is not None and abs(c) > relation_tol)
        curvatures = plane_curvatures(d)
        positive.append(bool(curvatures) and min(curvatures) > relation_tol)
        shapes.append(orbit_geometry(d, relation_tol))

    conditions = {
        'i': {'passed': any(g['totally_geodesic'] for g in geodesic),
              'note': 'ambient projection approximation of the intrinsic condition'},
        'ii': {'passed': k == n - 1, 'cohomogeneity_on_M': k},
        'iii': {'passed': all(u['umbilic_in_M'] for u in umbilic),
                'max_deviation': max(u['deviation'] for u in umbilic)},
        'iv': {'passed': any(constant)},
        'v': {'passed': any(positive)}
    }
    any_passed = any(c['passed'] for c in conditions.values())
    report = {'conditions': conditions, 'any_passed': any_passed, 'samples': samples,
              'orbit_dim': orbit_dim, 'orbit_geometry': sorted(set(shapes))}
    if any_passed:
        report['axis'] = fixed_subspace(action).basis.tolist()
    passed = [name for name, c in conditions.items() if c['passed']]
    logger.info(f"{action.label}: rotation conditions passing {passed or 'none'}")
    return report
