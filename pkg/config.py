"""
config.py - Configuration globale du projet PolarSynth

Configuration centralisée pour l'ensemble du projet: tolérances numériques,
paramètres d'échantillonnage, codes de sortie de la CLI et journalisation.
"""

import os
from pathlib import Path

# Configuration globale du projet
PROJECT_CONFIG = {
    'numgeo': {
        'skew_tol': 1e-12,
        'ortho_tol': 1e-10,
        'det_tol': 1e-8,
        'rank_tol': 1e-8,
        'fd_step': 1e-4
    },

    'polar': {
        'rank_tol': 1e-8,
        'regular_samples': 256,
        'seed': 0,
        'polar_tol': 1e-8,
        'grid_points': 64,
        'isotropy_samples': 16,
        'isotropy_scan': 128,
        'fix_tol': 1e-7,
        'basepoint_tol': 1e-8
    },

    'isoparametric': {
        'cluster_tol': 1e-6,
        'commutation_tol': 1e-8,
        'tangential_tol': 1e-8,
        'weyl_cap': 1024,
        'weyl_tol': 1e-8,
        'relation_tol': 1e-6,
        'zero_normal_tol': 1e-10
    },

    'synthesis': {
        'immersion_tol': 1e-6,
        'closure_tol': 1e-8,
        'invariance_tol': 1e-6,
        'group_samples': 256,
        'axis_tol': 1e-9,
        'slice_tol': 1e-9,
        'transversality_tol': 1e-8,
        'equivariance_trials': 50,
        'smoothness_order': 5,
        'smoothness_step': 0.05,
        'smoothness_tol': 1e-6,
        'realizability_tol': 1e-6,
        'metric_fd_step': 1e-4,
        'metric_tol': 1e-3,
        'profile_resolution': 64,
        'fiber_resolution': 16
    },

    'analysis': {
        'fd_step': 1e-3,
        'eig_tol': 1e-6,
        'tangency_tol': 1e-8,
        'geodesic_tol': 1e-6,
        'umbilic_tol': 1e-4,
        'orbit_samples': 8,
        'curvature_metric_step': 1e-4,
        'curvature_derivative_step': 1e-2
    },

    'cli': {
        'output_env_var': 'POLARSYNTH_OUTPUT_DIR',
        'default_output_dir': 'output',
        'report_name': 'report.txt',
        'summary_name': 'summary.json',
        'float_format': '.6e',
        'exit_codes': {
            'ok': 0,
            'unexpected': 1,
            'usage': 2,
            'polarity': 3,
            'weyl_invariance': 4,
            'realizability': 5,
            'smoothness': 6,
            'equivariance': 7,
            'transversality': 8,
            'curvature': 9,
            'metadata': 10,
            'degenerate': 11
        }
    },

    'benchmark': {
        'iterations': 3,
        'runtime_limits_s': {
            'exponential': 1.0,
            'cohomogeneity': 5.0,
            'decomposition': 2.0,
            'weyl': 1.0,
            'rotation_torus': 10.0,
            'rotation_conditions': 10.0,
            'metric_identity': 5.0,
            'evenness_gate': 1.0,
            'cone_cross_check': 2.0
        },
        'graph_style': 'seaborn-v0_8',
        'dpi': 150,
        'results_dir': 'metrics'
    },

    'paths': {
        'project_root': Path(__file__).parent,
        'data': Path(__file__).parent / 'data',
        'actions': Path(__file__).parent / 'data' / 'actions',
        'profiles': Path(__file__).parent / 'data' / 'profiles',
        'benchmark': Path(__file__).parent / 'benchmark',
        'tests': Path(__file__).parent / 'Test',
        'metrics': Path(__file__).parent / 'metrics'
    },

    'logging': {
        'level': 'INFO',
        'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        'file': None
    }
}


def get_project_config(section: str = None):
    """
    Récupère la configuration du projet

    Args:
        section: Section spécifique de la config (numgeo, polar, synthesis, etc.)

    Returns:
        dict: Configuration demandée ou complète
    """
    if section:
        return PROJECT_CONFIG.get(section, {})
    return PROJECT_CONFIG


def update_project_config(updates: dict, section: str = None):
    """
    Met à jour la configuration du projet

    Args:
        updates: Dictionnaire des mises à jour
        section: Section spécifique à mettre à jour
    """
    if section and section in PROJECT_CONFIG:
        PROJECT_CONFIG[section].update(updates)
    else:
        for key, value in updates.items():
            if key in PROJECT_CONFIG and isinstance(PROJECT_CONFIG[key], dict):
                PROJECT_CONFIG[key].update(value)
            else:
                PROJECT_CONFIG[key] = value


def default_output_dir() -> Path:
    """Répertoire de sortie par défaut (variable d'environnement prioritaire)"""
    cli_conf = PROJECT_CONFIG['cli']
    return Path(os.environ.get(cli_conf['output_env_var'], cli_conf['default_output_dir']))


def exit_code(category: str) -> int:
    """Code de sortie stable associé à une catégorie d'échec"""
    return PROJECT_CONFIG['cli']['exit_codes'][category]


# Alias pour compatibilité
NUMGEO_CONFIG = PROJECT_CONFIG.get('numgeo', {})
POLAR_CONFIG = PROJECT_CONFIG.get('polar', {})
ISOPARAMETRIC_CONFIG = PROJECT_CONFIG.get('isoparametric', {})
SYNTHESIS_CONFIG = PROJECT_CONFIG.get('synthesis', {})
ANALYSIS_CONFIG = PROJECT_CONFIG.get('analysis', {})
CLI_CONFIG = PROJECT_CONFIG.get('cli', {})
BENCHMARK_CONFIG = PROJECT_CONFIG.get('benchmark', {})
