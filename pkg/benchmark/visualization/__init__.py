"""
benchmark.visualization - Graphiques statiques (temps des scénarios, aperçu de maillage)
"""

from .graphs import GraphGenerator, plot_mesh_projection

__all__ = [
    'GraphGenerator',
    'plot_mesh_projection'
]
