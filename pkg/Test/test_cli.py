"""
Tests CLI pour main.py

Ces tests exécutent main.py dans un sous-processus avec les fichiers de data/ :
- Aide et erreurs d'usage
- action-info, orbit, synth, verify, export
- Codes de sortie des catégories d'échec
- Sorties déterministes (summary.json)
"""

import unittest
import subprocess
import sys
import os
import json
import tempfile
import shutil
from pathlib import Path


class TestCliCommands(unittest.TestCase):
    """Tests CLI avec les vrais fichiers d'actions et de profils"""

    def setUp(self):
        """Configuration"""
        self.test_dir = tempfile.mkdtemp()
        self.project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
        self.actions = os.path.join(self.project_root, "data", "actions")
        self.profiles = os.path.join(self.project_root, "data", "profiles")

    def tearDown(self):
        """Nettoyage"""
        if os.path.exists(self.test_dir):
            shutil.rmtree(self.test_dir)

    def run_main(self, *args, out=None, timeout=300):
        cmd = [sys.executable, os.path.join(self.project_root, "main.py")] + list(args)
        if out is not None:
            cmd += ["--out", str(out)]
        return subprocess.run(cmd, capture_output=True, text=True, timeout=timeout,
                              cwd=self.project_root)

    def action(self, name):
        return os.path.join(self.actions, name)

    def profile(self, name):
        return os.path.join(self.profiles, name)

    def summary(self, out=None):
        with open(Path(out or self.test_dir) / "summary.json", 'r', encoding='utf-8') as f:
            return json.load(f)

    def synth_torus(self, out):
        return self.run_main("synth", "--action", self.action("rotation_model.json"),
                             "--profile", self.profile("rotation_torus.json"),
                             "--mode", "rotation", "--resolution", "16", "--tol", "1e-6", out=out)

    def test_main_help_command(self):
        """Test affichage aide main.py"""
        result = self.run_main("--help", timeout=30)
        self.assertEqual(result.returncode, 0)
        self.assertIn("usage:", result.stdout.lower())
        for name in ("action-info", "orbit", "synth", "verify", "export", "benchmark"):
            self.assertIn(name, result.stdout)

    def test_unknown_command(self):
        result = self.run_main("explode", timeout=30)
        self.assertEqual(result.returncode, 2)

    def test_missing_tolerance_is_usage_error(self):
        result = self.run_main("action-info", "--action", self.action("so3.json"), out=self.test_dir)
        self.assertEqual(result.returncode, 2)
        self.assertIn("tolerance", result.stderr.lower())

    def test_missing_file_is_usage_error(self):
        result = self.run_main("action-info", "--action", self.action("nope.json"), "--tol", "1e-8",
                               out=self.test_dir)
        self.assertEqual(result.returncode, 2)

    def test_malformed_json_reports_line(self):
        bad = Path(self.test_dir) / "bad.json"
        bad.write_text('{\n  "preset": "rotation",\n  "params": {"n": 3,}\n}\n', encoding='utf-8')
        result = self.run_main("action-info", "--action", str(bad), "--tol", "1e-8",
                               out=self.test_dir)
        self.assertEqual(result.returncode, 2)
        self.assertIn("bad.json:3", result.stderr)

    def test_action_info_polar(self):
        result = self.run_main("action-info", "--action", self.action("so3.json"), "--tol", "1e-8",
                               out=self.test_dir)
        self.assertEqual(result.returncode, 0, result.stderr)
        self.assertTrue((Path(self.test_dir) / "report.txt").exists())
        summary = self.summary()
        self.assertTrue(summary['passed'])
        self.assertTrue(summary['checks']['polar']['passed'])

    def test_action_info_explicit_generators(self):
        result = self.run_main("action-info", "--action", self.action("torus_generators.json"),
                               "--tol", "1e-8", out=self.test_dir)
        self.assertEqual(result.returncode, 0, result.stderr)

    def test_action_info_not_polar(self):
        """Cercle diagonal sur C^2: code 3"""
        result = self.run_main("action-info", "--action", self.action("diagonal_circle.json"),
                               "--tol", "1e-8", out=self.test_dir)
        self.assertEqual(result.returncode, 3)
        self.assertFalse(self.summary()['checks']['polar']['passed'])

    def test_orbit_principal_point(self):
        result = self.run_main("orbit", "--action", self.action("torus.json"),
                               "--point", "1", "0", "2", "0", "--tol", "1e-6", out=self.test_dir)
        self.assertEqual(result.returncode, 0, result.stderr)
        self.assertTrue(self.summary()['passed'])

    def test_orbit_hyperplane_reduction(self):
        """I_1 ⊕ SO(3): l'orbite reste dans un hyperplan affine orthogonal à e1"""
        result = self.run_main("orbit", "--action", self.action("rotation_model.json"),
                               "--point", "0.7", "0", "2", "0", "--tol", "1e-6", out=self.test_dir)
        self.assertEqual(result.returncode, 0, result.stderr)
        xi = self.summary()['results']['decomposition']['hyperplane_reduction']
        self.assertEqual([round(abs(x), 9) for x in xi], [1.0, 0.0, 0.0, 0.0])

        torus_dir = Path(self.test_dir) / "torus"
        result = self.run_main("orbit", "--action", self.action("torus.json"),
                               "--point", "1", "0", "2", "0", "--tol", "1e-6", out=torus_dir)
        self.assertEqual(result.returncode, 0, result.stderr)
        self.assertIsNone(self.summary(torus_dir)['results']['decomposition']['hyperplane_reduction'])

    def test_orbit_at_origin(self):
        """Orbite réduite à un point: code 11"""
        result = self.run_main("orbit", "--action", self.action("so3.json"),
                               "--point", "0", "0", "0", "--tol", "1e-6", out=self.test_dir)
        self.assertEqual(result.returncode, 11)
        self.assertEqual(self.summary()['failure']['category'], "degenerate")

    def test_synth_verify_export(self):
        """Chaîne complète synth -> verify -> export"""
        synth_dir = Path(self.test_dir) / "synth"
        result = self.synth_torus(synth_dir)
        self.assertEqual(result.returncode, 0, result.stderr)
        mesh = synth_dir / "rotation-torus.obj"
        for path in (mesh, synth_dir / "rotation-torus.meta.json",
                     synth_dir / "report.txt", synth_dir / "summary.json"):
            self.assertTrue(path.exists(), path)
        self.assertTrue(mesh.read_text(encoding='utf-8').startswith("#"))

        verify_dir = Path(self.test_dir) / "verify"
        result = self.run_main("verify", "--mesh", str(mesh), "--tol", "1e-6", out=verify_dir)
        self.assertEqual(result.returncode, 0, result.stderr)
        self.assertTrue(self.summary(verify_dir)['passed'])

        export_dir = Path(self.test_dir) / "export"
        result = self.run_main("export", "--mesh", str(mesh), "--keep", "0", "1", "3", out=export_dir)
        self.assertEqual(result.returncode, 0, result.stderr)
        for name in ("rotation-torus.projected.obj", "rotation-torus.vertices.csv", "rotation-torus.png"):
            self.assertTrue((export_dir / name).exists(), name)

    def test_export_rejects_bad_keep(self):
        synth_dir = Path(self.test_dir) / "synth"
        self.assertEqual(self.synth_torus(synth_dir).returncode, 0)
        result = self.run_main("export", "--mesh", str(synth_dir / "rotation-torus.obj"),
                               "--keep", "0", "0", "1", out=Path(self.test_dir) / "export")
        self.assertEqual(result.returncode, 2)

    def test_verify_without_metadata(self):
        """Maillage sans métadonnées: code 10"""
        synth_dir = Path(self.test_dir) / "synth"
        self.assertEqual(self.synth_torus(synth_dir).returncode, 0)
        os.remove(synth_dir / "rotation-torus.meta.json")
        verify_dir = Path(self.test_dir) / "verify"
        result = self.run_main("verify", "--mesh", str(synth_dir / "rotation-torus.obj"),
                               "--tol", "1e-6", out=verify_dir)
        self.assertEqual(result.returncode, 10)

    def test_verify_corrupted_mesh(self):
        """Un sommet déplacé: échec d'équivariance, code 7"""
        synth_dir = Path(self.test_dir) / "synth"
        self.assertEqual(self.synth_torus(synth_dir).returncode, 0)
        mesh = synth_dir / "rotation-torus.obj"
        lines = mesh.read_text(encoding='utf-8').splitlines()
        index = next(i for i, line in enumerate(lines) if line.startswith("v "))
        coords = [float(x) for x in lines[index].split()[1:]]
        coords[0] += 5.0
        lines[index] = "v " + " ".join(repr(x) for x in coords)
        mesh.write_text("\n".join(lines) + "\n", encoding='utf-8')
        verify_dir = Path(self.test_dir) / "verify"
        result = self.run_main("verify", "--mesh", str(mesh), "--tol", "1e-6", out=verify_dir)
        self.assertEqual(result.returncode, 7)
        self.assertFalse(self.summary(verify_dir)['checks']['equivariance']['passed'])

    def test_verify_rescaled_mesh(self):
        """Maillage dilaté de 1 %: équivariant, mais courbures fausses, code 9"""
        synth_dir = Path(self.test_dir) / "synth"
        self.assertEqual(self.synth_torus(synth_dir).returncode, 0)
        mesh = synth_dir / "rotation-torus.obj"
        lines = mesh.read_text(encoding='utf-8').splitlines()
        for i, line in enumerate(lines):
            if line.startswith("v "):
                lines[i] = "v " + " ".join(repr(1.01 * float(x)) for x in line.split()[1:])
        mesh.write_text("\n".join(lines) + "\n", encoding='utf-8')
        verify_dir = Path(self.test_dir) / "verify"
        result = self.run_main("verify", "--mesh", str(mesh), "--tol", "1e-6", out=verify_dir)
        self.assertEqual(result.returncode, 9)
        checks = self.summary(verify_dir)['checks']
        self.assertTrue(checks['equivariance']['passed'])
        self.assertTrue(checks['transversality']['passed'])
        self.assertFalse(checks['curvature']['passed'])
        self.assertGreater(checks['curvature']['max_deviation'], 1e-3)

    def test_synth_sweep_torus_sphere(self):
        result = self.run_main("synth", "--action", self.action("torus.json"),
                               "--profile", self.profile("torus_sphere.json"),
                               "--mode", "sweep", "--resolution", "16", "--tol", "1e-6",
                               out=self.test_dir)
        self.assertEqual(result.returncode, 0, result.stderr)
        self.assertTrue(self.summary()['checks']['equivariance']['passed'])

    def test_synth_asymmetric_profile(self):
        """Profil non invariant par W: code 4"""
        result = self.run_main("synth", "--action", self.action("torus.json"),
                               "--profile", self.profile("asymmetric_circle.json"),
                               "--mode", "sweep", "--tol", "1e-6", out=self.test_dir)
        self.assertEqual(result.returncode, 4)
        self.assertEqual(self.summary()['failure']['category'], "weyl_invariance")

    def test_synth_multirot(self):
        result = self.run_main("synth", "--action", self.action("torus.json"),
                               "--profile", self.profile("quarter_arc.json"),
                               "--mode", "multirot", "--tol", "1e-6", out=self.test_dir)
        self.assertEqual(result.returncode, 0, result.stderr)

    def test_synth_warped(self):
        result = self.run_main("synth", "--action", self.action("rotation_model.json"),
                               "--profile", self.profile("warped_torus.json"),
                               "--mode", "warped", "--tol", "1e-6", out=self.test_dir)
        self.assertEqual(result.returncode, 0, result.stderr)
        self.assertTrue(self.summary()['checks']['realizability']['passed'])

    def test_synth_warped_perturbed(self):
        """Métrique non réalisable: code 5"""
        result = self.run_main("synth", "--action", self.action("rotation_model.json"),
                               "--profile", self.profile("warped_perturbed.json"),
                               "--mode", "warped", "--tol", "1e-6", out=self.test_dir)
        self.assertEqual(result.returncode, 5)

    def test_synth_non_smooth_at_axis(self):
        """Profil cubique: fermeture non lisse sur l'axe, code 6"""
        result = self.run_main("synth", "--action", self.action("rotation_model.json"),
                               "--profile", self.profile("cubic_graph.json"),
                               "--mode", "rotation", "--tol", "1e-6", out=self.test_dir)
        self.assertEqual(result.returncode, 6)
        self.assertEqual(self.summary()['failure']['category'], "smoothness")

    def test_summary_is_deterministic(self):
        first, second = Path(self.test_dir) / "a", Path(self.test_dir) / "b"
        self.assertEqual(self.synth_torus(first).returncode, 0)
        self.assertEqual(self.synth_torus(second).returncode, 0)
        self.assertEqual((first / "summary.json").read_text(encoding='utf-8'),
                         (second / "summary.json").read_text(encoding='utf-8'))
        self.assertEqual((first / "rotation-torus.obj").read_bytes(),
                         (second / "rotation-torus.obj").read_bytes())

    def test_output_dir_from_environment(self):
        env_dir = Path(self.test_dir) / "from_env"
        cmd = [sys.executable, os.path.join(self.project_root, "main.py"), "action-info",
               "--action", self.action("so3.json"), "--tol", "1e-8"]
        env = dict(os.environ, POLARSYNTH_OUTPUT_DIR=str(env_dir))
        result = subprocess.run(cmd, capture_output=True, text=True, timeout=120,
                                cwd=self.project_root, env=env)
        self.assertEqual(result.returncode, 0, result.stderr)
        self.assertTrue((env_dir / "summary.json").exists())

    def test_run_config_file(self):
        config = Path(self.test_dir) / "run.json"
        config.write_text(json.dumps({'tol': 1e-8, 'action': self.action("so3.json")}),
                          encoding='utf-8')
        result = self.run_main("action-info", "--config", str(config), out=self.test_dir)
        self.assertEqual(result.returncode, 0, result.stderr)


if __name__ == '__main__':
    unittest.main()
