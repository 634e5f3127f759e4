import json

import numpy as np
import pytest

from curvespace import path_from_dict
from curvespace.cli import run

FLAT_DISTANCE_1_TO_2 = 3.7098994412119352


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


@pytest.fixture()
def flat_path_file(tmp_path):
    out = tmp_path / "p.json"
    code = run(
        [
            "circles", "--curvature", "0", "--r0", "1", "--r1", "2",
            "--s-samples", "16", "--t-samples", "64", "--out", str(out),
        ]
    )
    assert code == 0
    return out


class TestCircles:
    def test_writes_path_and_trajectory(self, tmp_path):
        out = tmp_path / "p.json"
        traj = tmp_path / "t.csv"
        code = run(
            [
                "circles", "--curvature", "1", "--r0", "0.3", "--r1", "1.2",
                "--s-samples", "12", "--t-samples", "48",
                "--out", str(out), "--traj", str(traj),
            ]
        )
        assert code == 0
        data = read_json(out)
        assert data["space"]["model"] == "sphere2d"
        assert data["s_samples"] == 12 and data["t_samples"] == 48
        lines = traj.read_text().strip().split("\n")
        assert lines[0] == "s,r,conserved"
        assert len(lines) == 13

    def test_round_trip_identical_curve_path(self, flat_path_file):
        data = read_json(flat_path_file)
        path = path_from_dict(data)
        assert np.asarray(data["points"]).shape == (16, 64, 2)
        assert np.array_equal(path.points, np.asarray(data["points"]))

    def test_deterministic_bytes(self, tmp_path):
        outs = []
        for name in ("a.json", "b.json"):
            out = tmp_path / name
            run(["circles", "--curvature", "0", "--r0", "1", "--r1", "2", "--out", str(out)])
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_missing_flags_usage_error(self, capsys):
        assert run(["circles", "--r0", "1"]) == 1
        assert "usage error" in capsys.readouterr().err

    def test_bad_radius_usage_error(self):
        assert run(["circles", "--curvature", "0", "--r0", "1", "--r1", "1", "--out", "/tmp/x.json"]) == 1

    def test_unknown_flag_rejected(self):
        assert run(["circles", "--curvature", "0", "--r0", "1", "--r1", "2", "--out", "/tmp/x.json", "--bogus", "3"]) == 1


class TestDistance:
    def test_flat_distance_printed(self, flat_path_file, capsys):
        assert run(["distance", "--input", str(flat_path_file)]) == 0
        printed = capsys.readouterr().out.strip()
        value = float(printed)
        # 12 significant digits formatting
        assert len(printed.replace(".", "").replace("-", "").lstrip("0")) <= 12
        assert value == pytest.approx(FLAT_DISTANCE_1_TO_2, rel=5e-3)

    def test_missing_file_is_input_error(self, tmp_path):
        assert run(["distance", "--input", str(tmp_path / "nope.json")]) == 3

    def test_invalid_json_is_input_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run(["distance", "--input", str(bad)]) == 3

    def test_wrong_schema_is_input_error(self, tmp_path):
        bad = tmp_path / "schema.json"
        bad.write_text(json.dumps({"points": [[0, 0]]}))
        assert run(["distance", "--input", str(bad)]) == 3


class TestCheck:
    def test_report_contents(self, flat_path_file, tmp_path):
        report_file = tmp_path / "report.json"
        assert run(["check", "--input", str(flat_path_file), "--report", str(report_file)]) == 0
        report = read_json(report_file)
        assert report["normal"] is True
        assert max(report["horizontality_sup"]) <= 1e-6
        assert report["speed_drift"] <= 5e-3
        assert max(report["rho_kappa_sup"]) <= 1e-5
        assert set(report["variations"]) == {"omega", "kappa"}
        for block in report["variations"].values():
            assert "sup_error" in block

    def test_helix_path_check(self, tmp_path):
        out = tmp_path / "h.json"
        assert run(
            ["helices", "--pitch", "1", "--r0", "1", "--r1", "2",
             "--s-samples", "12", "--t-samples", "64", "--out", str(out)]
        ) == 0
        data = read_json(out)
        assert data["pitch"] == 1.0
        report_file = tmp_path / "hr.json"
        assert run(["check", "--input", str(out), "--report", str(report_file)]) == 0
        report = read_json(report_file)
        assert max(report["horizontality_sup"]) <= 1e-4


class TestRender:
    def test_svg_output(self, flat_path_file, tmp_path):
        fig = tmp_path / "fig.svg"
        assert run(["render", "--input", str(flat_path_file), "--out", str(fig)]) == 0
        text = fig.read_text()
        assert text.startswith("<svg")
        assert text.count("<polyline") == 16
        assert "date" not in text and "time" not in text

    def test_3d_projection(self, tmp_path):
        out = tmp_path / "h.json"
        run(["helices", "--pitch", "0.5", "--r0", "1", "--r1", "1.5",
             "--s-samples", "8", "--t-samples", "32", "--out", str(out)])
        fig = tmp_path / "h.svg"
        assert run(["render", "--input", str(out), "--out", str(fig)]) == 0
        assert fig.read_text().count("<polyline") == 8

    def test_deterministic_bytes(self, flat_path_file, tmp_path):
        figs = []
        for name in ("f1.svg", "f2.svg"):
            fig = tmp_path / name
            run(["render", "--input", str(flat_path_file), "--out", str(fig)])
            figs.append(fig.read_bytes())
        assert figs[0] == figs[1]


class TestElasticaCommand:
    def test_identical_endpoints_fast_path(self, tmp_path):
        spec = {
            "K": 0.0,
            "L": 2 * np.pi,
            "start": {"k": 1.0, "lambda": 1.0, "mu": 0.0},
            "end": {"k": 1.0, "lambda": 1.0, "mu": 0.0},
            "init_frame": {
                "origin": [1.0, 0.0, 0.0],
                "T": [0.0, 1.0, 0.0],
                "N": [-1.0, 0.0, 0.0],
                "B": [0.0, 0.0, 1.0],
            },
        }
        spec_file = tmp_path / "spec.json"
        spec_file.write_text(json.dumps(spec))
        out = tmp_path / "path.json"
        trace = tmp_path / "trace.csv"
        code = run(
            ["elastica", "--spec", str(spec_file), "--control-points", "2",
             "--s-samples", "9", "--t-samples", "64",
             "--out", str(out), "--trace", str(trace)]
        )
        assert code == 0
        lines = trace.read_text().strip().split("\n")
        assert lines[0] == "iter,energy"
        assert float(lines[1].split(",")[1]) <= 1e-10
        data = read_json(out)
        assert data["s_samples"] == 9

    def test_bad_spec_is_input_error(self, tmp_path):
        spec_file = tmp_path / "spec.json"
        spec_file.write_text(json.dumps({"K": 0.0}))
        assert run(
            ["elastica", "--spec", str(spec_file), "--out", "/tmp/o.json", "--trace", "/tmp/t.csv"]
        ) == 3

    def test_real_optimization_run(self, tmp_path):
        # small circle-to-circle search; the optimized Sobolev length must
        # approach the concentric-geodesic distance for r: 1 -> 1.25
        spec = {
            "K": 0.0,
            "L": 2 * np.pi,
            "start": {"k": 1.0, "lambda": 1.0, "mu": 0.0},
            "end": {"k": 0.8, "lambda": 0.64, "mu": 0.0},
            "init_frame": {
                "origin": [1.0, 0.0, 0.0],
                "T": [0.0, 1.0, 0.0],
                "N": [-1.0, 0.0, 0.0],
                "B": [0.0, 0.0, 1.0],
            },
        }
        spec_file = tmp_path / "spec.json"
        spec_file.write_text(json.dumps(spec))
        out = tmp_path / "path.json"
        trace = tmp_path / "trace.csv"
        code = run(
            ["elastica", "--spec", str(spec_file), "--control-points", "1",
             "--seed", "0", "--s-samples", "9", "--t-samples", "64",
             "--out", str(out), "--trace", str(trace)]
        )
        assert code == 0
        rows = trace.read_text().strip().split("\n")[1:]
        energies = [float(r.split(",")[1]) for r in rows]
        assert all(b < a for a, b in zip(energies, energies[1:]))
        from curvespace import plane, solve_concentric_geodesic

        ref, _ = solve_concentric_geodesic(plane(), 1.0, 1.25, m=8, n=64)
        assert np.sqrt(energies[-1]) == pytest.approx(ref.distance, rel=0.02)
        data = read_json(out)
        assert data["s_samples"] == 9 and data["t_samples"] == 64


class TestExitCodes:
    def test_numeric_failure_exit_code(self, tmp_path):
        # pitch = nan makes the profile quadrature fail to converge
        out = tmp_path / "x.json"
        assert run(["helices", "--pitch", "nan", "--r0", "1", "--r1", "2", "--out", str(out)]) == 2
