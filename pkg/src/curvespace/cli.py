"""Command-line front end: solve, check, measure, and render curve paths.

Subcommands
-----------
circles    solve a concentric-circle geodesic and write the path JSON
helices    solve a coaxial-helix geodesic and write the path JSON
elastica   optimize a path of elastic curves between two parameter triples
check      run speed / horizontality / variation diagnostics on a path file
distance   print the Sobolev path length of a path file
render     draw the path as an SVG (one polyline per s-sample)

Exit codes: 0 success, 1 usage error, 2 numeric failure, 3 invalid input file.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import elastica as el
from . import sobolev_metric as sm
from . import special_geodesics as sg
from . import variations as va
from .errors import (
    CurveSpaceError,
    DomainError,
    InputFormatError,
    NormalityError,
    NumericFailure,
    PreconditionError,
)
from .space_forms import surface_of_curvature

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_INPUT = 3


@dataclass(frozen=True)
class Command:
    """Parsed invocation: one subcommand plus its validated options."""

    subcommand: str
    options: dict


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse errors through exit code 1
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _build_parser() -> _Parser:
    parser = _Parser(prog="curvespace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("circles", help="concentric-circle geodesic")
    p.add_argument("--curvature", type=float, required=True)
    p.add_argument("--r0", type=float, required=True)
    p.add_argument("--r1", type=float, required=True)
    p.add_argument("--s-samples", type=int, default=64)
    p.add_argument("--t-samples", type=int, default=256)
    p.add_argument("--out", required=True)
    p.add_argument("--traj", default=None)

    p = sub.add_parser("helices", help="coaxial-helix geodesic")
    p.add_argument("--pitch", type=float, required=True)
    p.add_argument("--r0", type=float, required=True)
    p.add_argument("--r1", type=float, required=True)
    p.add_argument("--s-samples", type=int, default=64)
    p.add_argument("--t-samples", type=int, default=256)
    p.add_argument("--out", required=True)
    p.add_argument("--traj", default=None)

    p = sub.add_parser("elastica", help="energy-minimizing path of elastica")
    p.add_argument("--spec", required=True)
    p.add_argument("--control-points", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--s-samples", type=int, default=17)
    p.add_argument("--t-samples", type=int, default=128)
    p.add_argument("--out", required=True)
    p.add_argument("--trace", required=True)

    p = sub.add_parser("check", help="diagnostics report for a path file")
    p.add_argument("--input", required=True)
    p.add_argument("--report", required=True)

    p = sub.add_parser("distance", help="Sobolev length of a path file")
    p.add_argument("--input", required=True)

    p = sub.add_parser("render", help="SVG figure of a path file")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    return parser


def parse_command(argv) -> Command:
    ns = _build_parser().parse_args(argv)
    options = {k: v for k, v in vars(ns).items() if k != "subcommand"}
    return Command(subcommand=ns.subcommand, options=options)


# ---------------------------------------------------------------------------
# shared IO helpers


def _dump_json(data, out_path: str) -> None:
    with open(out_path, "w") as fh:
        json.dump(data, fh, separators=(",", ":"))
        fh.write("\n")


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputFormatError(f"{path}: expected a JSON object")
    return data


def _load_path(path_file: str) -> sm.CurvePath:
    data = _load_json(path_file)
    try:
        return sm.path_from_dict(data)
    except CurveSpaceError as exc:
        raise InputFormatError(f"{path_file}: {exc}") from exc


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_circles(opt) -> int:
    space = surface_of_curvature(opt["curvature"])
    traj, path = sg.solve_concentric_geodesic(
        space, opt["r0"], opt["r1"], m=opt["s_samples"], n=opt["t_samples"]
    )
    _dump_json(sm.path_to_dict(path), opt["out"])
    if opt["traj"]:
        with open(opt["traj"], "w") as fh:
            fh.write(sg.trajectory_to_csv(traj))
    return EXIT_OK


def _cmd_helices(opt) -> int:
    traj, path = sg.solve_helix_geodesic(
        opt["r0"], opt["r1"], opt["pitch"], m=opt["s_samples"], n=opt["t_samples"]
    )
    _dump_json(sm.path_to_dict(path, pitch=opt["pitch"]), opt["out"])
    if opt["traj"]:
        with open(opt["traj"], "w") as fh:
            fh.write(sg.trajectory_to_csv(traj))
    return EXIT_OK


def _cmd_elastica(opt) -> int:
    data = _load_json(opt["spec"])
    try:
        endpoints = el.endpoints_from_dict(data)
    except CurveSpaceError as exc:
        raise InputFormatError(f"{opt['spec']}: {exc}") from exc
    spec, trace, path = el.optimize_elastica_path(
        endpoints,
        q=opt["control_points"],
        m=opt["s_samples"],
        n=opt["t_samples"],
        opts=el.OptimizeOptions(seed=opt["seed"]),
    )
    _dump_json(sm.path_to_dict(path), opt["out"])
    with open(opt["trace"], "w") as fh:
        fh.write("iter,energy\n")
        for it, energy in trace:
            fh.write(f"{it},{energy!r}\n")
    return EXIT_OK


def _variation_block(path: sm.CurvePath, normal: bool) -> dict:
    j = path.m // 2
    block = {}
    for quantity in va.VARIATION_QUANTITIES:
        rep = va.variation_report(path, quantity, j)
        entry = {"sup_error": rep.abs_error}
        # factor between the 2*ds and ds oracles; ~4 for second-order
        # agreement, omitted once the error sits at the roundoff floor
        if 2 <= j <= path.m - 3 and rep.abs_error > 1e-12:
            coarse = va.variation_report(path, quantity, j, eps_steps=2)
            entry["convergence_factor"] = coarse.abs_error / rep.abs_error
        if quantity == "omega" and normal:
            entry["normal_form_discrepancy"] = va.normal_omega_discrepancy(path, j)
        block[quantity] = entry
    return block


def _cmd_check(opt) -> int:
    path = _load_path(opt["input"])
    diag = sm.diagnose_path(path)
    rho_kappa_sup = None
    if diag.is_normal:
        rho_kappa_sup = [
            float(np.max(np.abs(sm.rho_kappa_defect(path, j)))) for j in range(path.m)
        ]
    report = {
        "speed": diag.speed.tolist(),
        "speed_drift": diag.speed_drift,
        "normal": diag.is_normal,
        "horizontality_sup": diag.horizontality_defect.tolist(),
        "rho_kappa_sup": rho_kappa_sup,
        "variations": _variation_block(path, diag.is_normal),
    }
    _dump_json(report, opt["report"])
    return EXIT_OK


def _cmd_distance(opt) -> int:
    path = _load_path(opt["input"])
    print(f"{sm.path_length(path):.12g}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# SVG rendering (static figure, no timestamps: byte-deterministic)

_VIEW = 720.0
_MARGIN = 40.0
# fixed orthographic view for space curves: azimuth 30deg, elevation 22deg
_AZ, _EL = np.radians(30.0), np.radians(22.0)
_PROJ3 = np.array(
    [
        [np.cos(_AZ), np.sin(_AZ), 0.0],
        [-np.sin(_AZ) * np.sin(_EL), np.cos(_AZ) * np.sin(_EL), np.cos(_EL)],
    ]
)


def _project(points: np.ndarray) -> np.ndarray:
    if points.shape[-1] == 2:
        return points
    return points @ _PROJ3.T


def _render_svg(path: sm.CurvePath) -> str:
    flat = np.concatenate([_project(c.points) for c in path.curves])
    lo = flat.min(axis=0)
    hi = flat.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-9))
    scale = (_VIEW - 2.0 * _MARGIN) / span

    def to_screen(pts):
        x = _MARGIN + (pts[:, 0] - lo[0]) * scale
        y = _VIEW - _MARGIN - (pts[:, 1] - lo[1]) * scale
        return x, y

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_VIEW:.0f}" '
        f'height="{_VIEW:.0f}" viewBox="0 0 {_VIEW:.0f} {_VIEW:.0f}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for j, curve in enumerate(path.curves):
        pts = _project(curve.points)
        if curve.closed:
            pts = np.vstack([pts, pts[:1]])
        x, y = to_screen(pts)
        coord = " ".join(f"{xi:.2f},{yi:.2f}" for xi, yi in zip(x, y))
        if j == 0:
            style = 'stroke="#1a9641" stroke-width="2.2"'
        elif j == path.m - 1:
            style = 'stroke="#2b83ba" stroke-width="2.2"'
        else:
            style = 'stroke="#bbbbbb" stroke-width="0.8"'
        lines.append(f'<polyline points="{coord}" fill="none" {style}/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _cmd_render(opt) -> int:
    path = _load_path(opt["input"])
    with open(opt["out"], "w") as fh:
        fh.write(_render_svg(path))
    return EXIT_OK


_HANDLERS = {
    "circles": _cmd_circles,
    "helices": _cmd_helices,
    "elastica": _cmd_elastica,
    "check": _cmd_check,
    "distance": _cmd_distance,
    "render": _cmd_render,
}


def run(argv) -> int:
    """Dispatch one CLI invocation; returns the process exit code."""
    try:
        command = parse_command(list(argv))
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _HANDLERS[command.subcommand](command.options)
    except InputFormatError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DomainError, PreconditionError, NormalityError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericFailure as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
