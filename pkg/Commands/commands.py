"""
commands.py - The polarsynth subcommands

Each cmd_* takes a RunConfig, writes report.txt and summary.json into the
output directory and returns the process exit code. Domain failures
(GeometryError subclasses) are written to the report with their category
before the code is returned.
"""

import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import pandas as pd

from NumGeo.errors import ConfigParseError, GeometryError, PointOrbitError, WeylInvarianceError
from PolarAction.Orbits import classify_orbit, orbit_span, max_orbit_dimension
from PolarAction.Polarity import (
    SectionSubspace, cohomogeneity, regular_section, certify_polar, fixed_subspace
)
from Isoparametric.SecondForm import orbit_second_ff_fd
from Isoparametric.PrincipalNormals import (
    principal_normals, gauss_curvature_table, constant_curvature, orbit_geometry,
    check_transported_normals
)
from Isoparametric.WeylGroup import (
    weyl_group_at, weyl_group_for_section, permutation_deviation, invariant_hyperplane_reduction
)
from Synthesis.Profile import ProfileHypersurface
from Synthesis.Sweep import (
    GroupSampling, SweptHypersurface, sweep, equivariance_check, equivariance_report,
    transversality_check, check_weyl_invariance, section_slice
)
from Synthesis.Rotation import rotation_hypersurface, block_sweep
from Synthesis.Warped import WarpedProductSpec, warped_to_rotation
from Synthesis.MeshIO import (
    write_mesh, read_mesh, write_metadata, read_metadata, projected_obj_text, mesh_patches,
    atomic_write_text
)
from Analysis.FundamentalForms import (
    relative_nullity, sample_forms, stencil_samples, sample_curvature_deviation
)
from Analysis.OrbitDiagnostics import rotation_structure_report
from Commands.RunConfig import (
    RunConfig, ActionSpec, ProfileSpec, load_json, load_action, action_from_dict, profile_from_dict
)
from Commands.reports import RunReport, canonical
from config import ANALYSIS_CONFIG, BENCHMARK_CONFIG, exit_code

logger = logging.getLogger(__name__)

# category of the exit code when a named check fails
CHECK_CATEGORIES = {
    'polar': 'polarity',
    'weyl_invariance': 'weyl_invariance',
    'weyl_permutation': 'weyl_invariance',
    'transported_normals': 'curvature',
    'realizability': 'realizability',
    'metric': 'realizability',
    'equivariance': 'equivariance',
    'transversality': 'transversality',
    'section_slice': 'transversality',
    'curvature': 'curvature'
}

CURVATURE_NODES = 48


def _finish(report: RunReport, cfg: RunConfig) -> int:
    report.write(cfg.output_dir)
    if report.failure is not None:
        return exit_code(report.failure['category'])
    for name, check in report.checks.items():
        if not check.get('passed', False):
            return exit_code(CHECK_CATEGORIES.get(name, 'unexpected'))
    return exit_code('ok')


def _guarded(report: RunReport, cfg: RunConfig, body: Callable[[], None]) -> int:
    try:
        body()
    except GeometryError as e:
        if isinstance(e, ConfigParseError):
            raise
        logger.debug(f"{type(e).__name__}: {e}")
        report.fail(e.category, str(e), e.report)
    return _finish(report, cfg)


def _matrix_rows(frame_basis: np.ndarray) -> List[List[Any]]:
    return [[i] + [float(x) for x in row] for i, row in enumerate(frame_basis)]


def _coordinate_headers(dim: int) -> List[str]:
    return ["#"] + [f"x{i + 1}" for i in range(dim)]


def cmd_action_info(cfg: RunConfig) -> int:
    """Cohomogeneity, fixed subspace, section and polar certificate of an action file"""
    if cfg.action_path is None:
        raise ConfigParseError("action-info needs --action")
    spec = load_action(cfg.action_path)
    action = spec.action
    report = RunReport("action-info", cfg.to_dict())

    def body():
        section = spec.section or regular_section(action, cfg.seed)
        fixed = fixed_subspace(action)
        report.add_values("action", {
            'label': action.label,
            'ambient_dim': action.ambient_dim,
            'generators': len(action.generators),
            'algebra_dim': action.algebra_dim,
            'max_orbit_dim': max_orbit_dimension(action, cfg.seed),
            'cohomogeneity': cohomogeneity(action, cfg.seed),
            'fixed_dim': fixed.rank,
            'section_rank': section.rank
        })
        if fixed.rank:
            report.add_table("fixed subspace", _matrix_rows(fixed.basis),
                             _coordinate_headers(action.ambient_dim))
        report.add_table("section", _matrix_rows(section.frame.basis),
                         _coordinate_headers(action.ambient_dim))
        certificate = certify_polar(action, section, seed=cfg.seed, tol=cfg.tol)
        report.add_check('polar', dict(certificate.to_dict(), passed=certificate.polar),
                         detail_key='max_residual')

    return _guarded(report, cfg, body)


def cmd_orbit(cfg: RunConfig) -> int:
    """Classification, principal normals, curvature table and Weyl group at a point"""
    if cfg.action_path is None or cfg.point is None:
        raise ConfigParseError("orbit needs --action and --point")
    spec = load_action(cfg.action_path)
    action = spec.action
    report = RunReport("orbit", dict(cfg.to_dict(), point=list(cfg.point)))

    def body():
        p = np.asarray(cfg.point, dtype=float)
        if p.size != action.ambient_dim:
            raise ConfigParseError(f"Point has {p.size} coordinates, action acts on R^{action.ambient_dim}")
        if not np.any(p):
            raise PointOrbitError("The origin is a point orbit: no orbit geometry to report")
        kind = classify_orbit(action, p, seed=cfg.seed)
        span = orbit_span(action, p)
        report.add_values("orbit", {
            'kind': kind.kind,
            'orbit_dim': kind.orbit_dim,
            'max_orbit_dim': kind.max_orbit_dim,
            'span_rank': span['frame'].rank,
            'full': span['full'],
            'trivial_on_complement': span['trivial_on_complement']
        })
        if kind.kind == "singular":
            logger.info(f"{action.label}: singular orbit, no principal-normal decomposition")
            return

        data = weyl_group_at(action, p)
        d, hyperplanes, W = data['decomposition'], data['hyperplanes'], data['weyl']
        K = gauss_curvature_table(d)
        fd = principal_normals(orbit_second_ff_fd(action, p, cfg.fd_step), seed=cfg.seed)
        exact_norms = sorted(float(np.linalg.norm(eta)) for eta in d.normals)
        fd_norms = sorted(float(np.linalg.norm(eta)) for eta in fd.normals)
        fd_gap = (max(abs(a - b) for a, b in zip(exact_norms, fd_norms))
                  if len(exact_norms) == len(fd_norms) else float('inf'))
        reduction = invariant_hyperplane_reduction(d, W, cfg.tol)
        report.add_values("decomposition", {
            'principal_normals': d.count,
            'geometry': orbit_geometry(d, cfg.tol),
            'constant_curvature': constant_curvature(d, cfg.tol),
            'fd_norm_deviation': fd_gap,
            'weyl_order': W.order if W is not None else 1,
            'hyperplane_reduction': (None if reduction is None
                                     else [float(x) for x in np.round(reduction, 12)])
        })
        report.add_table("principal normals",
                         [[i, float(np.linalg.norm(eta)), m] + [float(x) for x in eta]
                          for i, (eta, m) in enumerate(zip(d.normals, d.multiplicities))],
                         ["#", "|eta|", "mult"] + _coordinate_headers(action.ambient_dim)[1:])
        report.add_table("curvature table <eta_i, eta_j>",
                         [[i] + [float(x) for x in row] for i, row in enumerate(K)],
                         ["#"] + [str(j) for j in range(d.count)])
        report.results['decomposition_detail'] = d.to_dict()
        if W is not None:
            report.add_table("Weyl group",
                             [[i, g.matrix.round(12).tolist(), g.translation.round(12).tolist()]
                              for i, g in enumerate(W.elements)],
                             ["#", "matrix", "translation"])
            deviation = permutation_deviation(W, hyperplanes)
            report.add_check('weyl_permutation', {'passed': deviation < cfg.tol,
                                                  'max_deviation': deviation, 'order': W.order},
                             detail_key='max_deviation')
        report.add_check('transported_normals',
                         check_transported_normals(action, p, seed=cfg.seed, tol=cfg.tol),
                         detail_key='max_deviation')

    return _guarded(report, cfg, body)


def synthesize(action_spec: ActionSpec, profile: ProfileSpec, mode: str,
               resolution: int, seed: int, tol: float, fd_step: float) -> Dict[str, Any]:
    """
    Build G(L) for one of the synthesis modes. Returns the swept samples
    with the action, section, Weyl group and profile it came from, plus
    the mode-specific reports.
    """
    action = action_spec.action
    curve = profile.curve
    chart = curve.chart()
    grid = curve.grid(resolution)
    periodic = (curve.periodic,)
    half_space = True if profile.half_space is None else bool(profile.half_space)
    blocks = action_spec.block_dims

    if mode == "sweep":
        section = action_spec.sweep_section(seed)
        if section.rank != 2:
            raise ConfigParseError(f"Curve profiles need a rank-2 section, got rank {section.rank}")
        W = weyl_group_for_section(action, section)
        L = ProfileHypersurface.from_function(section, chart, grid, periodic, label=profile.label)
        invariance = check_weyl_invariance(L, W, tol)
        if not invariance['invariant']:
            raise WeylInvarianceError(
                f"Profile is not invariant under the Weyl group "
                f"(deviation {invariance['max_deviation']:.3e})", report=invariance)
        sampling = GroupSampling(**dict({'seed': seed}, **profile.group_sampling))
        swept = sweep(action, L, sampling)
        return {'action': action, 'swept': swept, 'weyl': W, 'profile': L, 'section': section,
                'invariance': invariance}

    if mode in ("rotation", "warped"):
        if blocks is None or len(blocks) != 2 or blocks[0] < 1:
            raise ConfigParseError(f"{mode} mode needs a rotation-model action I_k+SO(n-k+1)")
        k, n = blocks[0], action.ambient_dim - 1
        if k != 1:
            raise ConfigParseError(f"Curve profiles need k = 1, the action has k = {k}")
        if mode == "rotation":
            return rotation_hypersurface(k, n, chart, grid, periodic, half_space=half_space,
                                         fiber_resolution=profile.fiber_resolution,
                                         label=profile.label)
        c = float(profile.warped.get('fiber_radius_convention', 1.0))
        scale = float(profile.warped.get('rho_scale', 1.0))
        spec = WarpedProductSpec(base_chart=chart, base_grid=grid,
                                 rho=lambda u: scale * float(chart(u)[-1]) / c,
                                 fiber_dim=n - k, periodic=periodic,
                                 fiber_radius_convention=c, label=profile.label)
        return warped_to_rotation(spec, profile.fiber_resolution, tol=tol, step=fd_step)

    if mode == "multirot":
        dims = profile.block_dims or blocks
        if dims is None:
            raise ConfigParseError("multirot mode needs block_dims in the profile or a block action")
        same = blocks is not None and list(dims) == list(blocks)
        return block_sweep(dims, chart, grid, periodic, radii=profile.radii, half_space=half_space,
                           fiber_resolution=profile.fiber_resolution,
                           action=action if same else None, label=profile.label)

    raise ConfigParseError(f"Unknown synthesis mode '{mode}'")


def _check_swept(report: RunReport, result: Dict[str, Any], cfg: RunConfig):
    M = result['swept']
    report.add_check('equivariance', equivariance_report(M, result['action'], seed=cfg.seed),
                     detail_key='max_residual')
    report.add_check('transversality', transversality_check(result['section'], M, tol=cfg.tol),
                     detail_key='min_margin')
    report.add_check('section_slice', section_slice(M, result['section'], result['weyl'],
                                                    result['profile'], tol=cfg.tol),
                     detail_key='max_deviation')


def cmd_synth(cfg: RunConfig) -> int:
    """Synthesize G(L), write the mesh with its metadata and the verification summary"""
    if cfg.action_path is None or cfg.profile_path is None:
        raise ConfigParseError("synth needs --action and --profile")
    action_data = load_json(cfg.action_path)
    profile_data = load_json(cfg.profile_path)
    spec = action_from_dict(action_data, cfg.action_path)
    profile = profile_from_dict(profile_data, cfg.profile_path)
    resolution = cfg.profile_resolution(profile)
    report = RunReport("synth", dict(cfg.to_dict(), resolution=resolution))

    def body():
        result = synthesize(spec, profile, cfg.mode, resolution, cfg.seed, cfg.tol, cfg.fd_step)
        M = result['swept']
        if result.get('invariance') is not None:
            report.add_check('weyl_invariance', result['invariance'], detail_key='max_deviation')
        if 'realizability' in result:
            report.add_check('realizability', result['realizability'], detail_key='max_mismatch')
            report.add_check('metric', result['metric_report'], detail_key='max_relative_error')
        report.add_values("hypersurface", {
            'ambient_dim': M.ambient_dim,
            'samples': M.sample_count,
            'singular_samples': int(np.sum(~M.regular)),
            'patches': len(M.patches),
            'resolution': M.resolution,
            'weyl_order': result['weyl'].order
        })
        _check_swept(report, result, cfg)

        mesh_path = cfg.output_dir / f"{profile.label}.obj"
        write_mesh(mesh_path, M, name=profile.label)
        write_metadata(mesh_path, canonical({
            'mode': cfg.mode,
            'action': action_data,
            'profile': profile_data,
            'resolution': resolution,
            'seed': cfg.seed,
            'tol': cfg.tol,
            'fd_step': cfg.fd_step,
            'section': result['section'].to_dict(),
            'patches': [p.to_dict() for p in M.patches],
            'group_grid_complete': M.group_grid_complete,
            'sample_resolution': M.resolution,
            'swept': M.metadata
        }))
        report.results['mesh'] = mesh_path.name

    return _guarded(report, cfg, body)


def _curvature_check(M: SweptHypersurface, reference: SweptHypersurface, tol: float) -> Dict[str, Any]:
    """
    Stencil-fitted principal curvatures of the mesh samples against those of
    the rebuilt hypersurface at the same indices.
    """
    if M.sample_count != reference.sample_count:
        return {'passed': False, 'checked': 0, 'max_deviation': None,
                'samples': M.sample_count, 'expected_samples': reference.sample_count}
    indices = stencil_samples(M, CURVATURE_NODES)
    samples = [sample_forms(M, i) for i in indices]
    positive = [s.node for s in samples if np.all(s.principal_curvatures > ANALYSIS_CONFIG['eig_tol'])]
    nullities = [relative_nullity(s) for s in samples]
    deviation = sample_curvature_deviation(M, reference, indices) if indices else None
    passed = bool(positive) and deviation is not None and deviation < tol
    return {'passed': passed, 'checked': len(samples), 'positive_nodes': len(positive),
            'max_deviation': deviation, 'tolerance': tol,
            'min_nullity': min(nullities) if nullities else None,
            'max_nullity': max(nullities) if nullities else None}


def cmd_verify(cfg: RunConfig) -> int:
    """Re-run the invariant suite on a written mesh and its sidecar metadata"""
    if cfg.mesh_path is None:
        raise ConfigParseError("verify needs --mesh")
    report = RunReport("verify", cfg.to_dict())

    def body():
        meta = read_metadata(cfg.mesh_path)
        mesh = read_mesh(cfg.mesh_path)
        spec = action_from_dict(meta['action'])
        profile = profile_from_dict(meta['profile'])
        action = spec.action
        section = SectionSubspace.from_dict(meta['section'])
        patches, complete = mesh_patches(meta)
        M = SweptHypersurface.from_points(mesh.vertices, action, normals=mesh.normals,
                                          patches=patches, grid_complete=complete,
                                          section=section, metadata=meta.get('swept'))
        resolution = float(meta.get('sample_resolution', M.resolution))
        residual = equivariance_check(M, action, seed=cfg.seed)
        report.add_check('equivariance', {'passed': residual < 2.0 * resolution,
                                          'max_residual': residual, 'bound': 2.0 * resolution,
                                          'resolution': resolution},
                         detail_key='max_residual')
        report.add_check('transversality', transversality_check(section, M, tol=cfg.tol),
                         detail_key='min_margin')

        rebuilt = synthesize(spec, profile, meta['mode'], int(meta['resolution']),
                             int(meta.get('seed', cfg.seed)), float(meta.get('tol', cfg.tol)),
                             float(meta.get('fd_step', cfg.fd_step)))
        if meta['mode'] in ("rotation", "warped"):
            report.add_check('curvature', _curvature_check(M, rebuilt['swept'], cfg.tol),
                             detail_key='max_deviation')
        report.add_check('section_slice', section_slice(M, section, rebuilt['weyl'],
                                                        rebuilt['profile'], tol=cfg.tol),
                         detail_key='max_deviation')

        structure = rotation_structure_report(action, M, tol=cfg.tol)
        report.add_table("rotation conditions",
                         [[name, "PASS" if c['passed'] else "FAIL"]
                          for name, c in structure['conditions'].items()],
                         ["condition", "status"])
        report.results['rotation_structure'] = structure

    return _guarded(report, cfg, body)


def cmd_export(cfg: RunConfig) -> int:
    """Projected 3-D Wavefront file, vertex CSV and PNG preview of a mesh"""
    if cfg.mesh_path is None:
        raise ConfigParseError("export needs --mesh")
    report = RunReport("export", dict(cfg.to_dict(), keep=list(cfg.keep)))

    def body():
        from benchmark.visualization.graphs import plot_mesh_projection

        mesh = read_mesh(cfg.mesh_path)
        stem = Path(cfg.mesh_path).stem
        out = cfg.output_dir
        obj_path = atomic_write_text(out / f"{stem}.projected.obj",
                                     projected_obj_text(mesh, cfg.keep, name=stem))
        columns = [f"x{i + 1}" for i in range(mesh.ambient_dim)]
        frame = pd.DataFrame(mesh.vertices, columns=columns)
        for i, col in enumerate(columns):
            frame[f"n{col}"] = mesh.normals[:, i]
        csv_path = atomic_write_text(out / f"{stem}.vertices.csv", frame.to_csv(index=False))
        png_path = plot_mesh_projection(mesh, out / f"{stem}.png", keep=cfg.keep, title=stem)
        report.add_values("export", {
            'vertices': len(mesh.vertices),
            'faces': len(mesh.faces),
            'projected_obj': obj_path.name,
            'vertex_csv': csv_path.name,
            'preview': png_path.name
        })

    return _guarded(report, cfg, body)


def cmd_benchmark(cfg: RunConfig) -> int:
    """Time the reference scenarios against their limits; CSV and chart under the output dir"""
    report = RunReport("benchmark", cfg.to_dict())

    def body():
        from benchmark.runner import BenchmarkRunner

        runner = BenchmarkRunner(cfg.output_dir / BENCHMARK_CONFIG['results_dir'])
        runner.run_full_suite()
        for r in runner.collector.results:
            report.add_check(r.scenario, {'passed': r.checks_passed and r.within_limit,
                                          'checks_passed': r.checks_passed,
                                          'within_limit': r.within_limit})
        report.add_values("benchmark", {
            'scenarios': len(runner.collector.results),
            'iterations': runner.collector.iterations,
            'runtime_csv': runner.csv_path.name if runner.csv_path else None,
            'chart': runner.graph_path.name if runner.graph_path else None
        })

    return _guarded(report, cfg, body)


COMMAND_TABLE: Dict[str, Callable[[RunConfig], int]] = {
    'action-info': cmd_action_info,
    'orbit': cmd_orbit,
    'synth': cmd_synth,
    'verify': cmd_verify,
    'export': cmd_export,
    'benchmark': cmd_benchmark
}


def run_command(cfg: RunConfig) -> int:
    handler: Optional[Callable[[RunConfig], int]] = COMMAND_TABLE.get(cfg.command)
    if handler is None:
        raise ConfigParseError(f"No handler for command '{cfg.command}'")
    logger.info(f"Running {cfg.command}")
    return handler(cfg)
