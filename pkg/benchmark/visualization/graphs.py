"""
benchmark/visualization/graphs.py - Graphiques statiques pour polarsynth

1. Temps d'exécution des scénarios face à leurs limites
2. Aperçu PNG d'une projection 3-D d'un maillage exporté
"""

from pathlib import Path
from typing import Sequence

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
import seaborn as sns

from config import BENCHMARK_CONFIG


class GraphGenerator:
    """Générateur des graphiques de benchmark"""

    def __init__(self, output_dir: Path = None):
        self.output_dir = Path(output_dir or BENCHMARK_CONFIG['results_dir'])
        self.graphs_dir = self.output_dir / "graphs"
        self.graphs_dir.mkdir(parents=True, exist_ok=True)

        self.COLORS = {
            'within': '#27A300',
            'over': '#DC3545',
            'limit': '#2E86AB'
        }

        plt.style.use(BENCHMARK_CONFIG["graph_style"])
        sns.set_style("whitegrid")
        sns.set_context("paper", font_scale=1.2)

    def load_csv(self, filename: str = "scenario_runtimes.csv") -> pd.DataFrame:
        """Charge un fichier CSV"""
        csv_path = self.output_dir / "csv" / filename
        if csv_path.exists():
            return pd.read_csv(csv_path)
        print(f"CSV not found: {csv_path}")
        return pd.DataFrame()

    def graph_runtime_vs_limit(self, df: pd.DataFrame = None) -> plt.Figure:
        """Temps moyen par scénario, limite en surimpression"""
        df = self.load_csv() if df is None else df
        if df.empty:
            print("No runtime data found")
            return None

        fig, ax = plt.subplots(figsize=(12, 6))
        colors = [self.COLORS['within'] if ok else self.COLORS['over'] for ok in df['within_limit']]
        positions = np.arange(len(df))
        ax.bar(positions, df['mean_time_s'], color=colors, alpha=0.85, label='mean runtime')
        ax.scatter(positions, df['limit_s'], marker='_', s=900, color=self.COLORS['limit'],
                   linewidths=3, label='limit', zorder=3)
        ax.set_xticks(positions)
        ax.set_xticklabels(df['scenario'], rotation=30, ha='right')
        ax.set_yscale('log')
        ax.set_ylabel('Time (s)')
        ax.set_title('Scenario runtimes against limits', fontweight='bold')
        ax.legend(loc='upper left', frameon=True)
        plt.tight_layout()
        return fig

    def generate_all_graphs(self, df: pd.DataFrame = None) -> Path:
        fig = self.graph_runtime_vs_limit(df)
        if fig is None:
            return None
        path = self.graphs_dir / "scenario_runtimes.png"
        fig.savefig(path, dpi=BENCHMARK_CONFIG['dpi'], bbox_inches='tight')
        plt.close(fig)
        print(f"Graph saved: {path}")
        return path


def plot_mesh_projection(mesh, path, keep: Sequence[int] = (0, 1, 2), title: str = "mesh") -> Path:
    """Static 3-D scatter/triangle preview of three kept coordinates"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    keep = list(keep)
    xyz = mesh.vertices[:, keep]
    fig = plt.figure(figsize=(7, 7))
    ax = fig.add_subplot(111, projection='3d')
    if len(mesh.faces):
        ax.plot_trisurf(xyz[:, 0], xyz[:, 1], xyz[:, 2], triangles=mesh.faces,
                        cmap='viridis', linewidth=0.1, alpha=0.8)
    else:
        ax.scatter(xyz[:, 0], xyz[:, 1], xyz[:, 2], s=2)
    ax.set_xlabel(f"x{keep[0] + 1}")
    ax.set_ylabel(f"x{keep[1] + 1}")
    ax.set_zlabel(f"x{keep[2] + 1}")
    ax.set_title(title)
    fig.savefig(path, dpi=BENCHMARK_CONFIG['dpi'], bbox_inches='tight')
    plt.close(fig)
    return path
