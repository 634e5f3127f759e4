"""Reduced geodesic solvers: concentric circles and coaxial helices.

Both families collapse the geodesic equation to conservation of

    E = (r')^2 f(r),

with profile f(r) = omega + omega_r^2 / omega for circles on a
constant-curvature surface and f(r) = sqrt(r^2 + h^2) + 1/sqrt(r^2 + h^2)
for pitch-h helices in R^3.  With boundary values r(0) = r0, r(1) = r1 the
monotone solution is recovered by quadrature:

    sqrt(E) = | integral_{r0}^{r1} sqrt(f) dr |,
    r(s) solves  integral_{r0}^{r(s)} sqrt(f) dr = s sqrt(E).

The Sobolev speed of the materialized path is nu = sqrt(2 pi E), constant
in s, and the path distance is sqrt(2 pi E).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from ._fd import diff1
from .errors import DomainError, NumericFailure, PreconditionError
from .sobolev_metric import CurvePath, make_path
from .space_forms import (
    Model,
    PolarFrame,
    SpaceForm,
    exp_polar,
    omega_profile,
    standard_frame,
)

R_MIN = 1e-4
_QUAD_TOL = 1e-12
_INVERT_TOL = 1e-12


@dataclass(frozen=True)
class ConcentricCircles:
    space: SpaceForm
    frame: PolarFrame


@dataclass(frozen=True)
class Helices:
    pitch: float


@dataclass(frozen=True, eq=False)
class RadiusTrajectory:
    """Solved radius-vs-s trajectory with its conserved quantity.

    ``conserved`` is E = (r')^2 f(r); ``distance`` the Sobolev length
    sqrt(2 pi E) of the materialized path.
    """

    family: ConcentricCircles | Helices
    s_grid: np.ndarray
    r: np.ndarray
    conserved: float
    distance: float


def circle_profile_f(space: SpaceForm, r):
    """Conserved-quantity profile f(r) = omega + omega_r^2 / omega."""
    if np.any(np.asarray(r, dtype=float) < R_MIN):
        raise DomainError(f"profile blows up near r = 0; keep r >= {R_MIN}")
    om, om_r = omega_profile(space, r)
    return om + om_r * om_r / om


def helix_profile_f(r, h: float):
    """Helix profile sqrt(r^2 + h^2) + 1 / sqrt(r^2 + h^2)."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise DomainError("helix radius must be positive")
    rho = np.sqrt(r * r + h * h)
    out = rho + 1.0 / rho
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# conserved-quantity quadrature


def _solve_radius_profile(sqrt_f, r0: float, r1: float, m: int):
    """Invert the arclength-like integral of sqrt(f) on a uniform s-grid.

    Returns (s_grid, r, sqrt_E).  The integral runs from min(r0, r1) to
    max(r0, r1); targets are mirrored for decreasing trajectories so
    forward and reverse solves produce exactly mirrored radii.
    """
    if m < 3:
        raise PreconditionError("need at least 3 path samples")
    lo, hi = min(r0, r1), max(r0, r1)
    with warnings.catch_warnings():
        # a failed quadrature is reported through NumericFailure below
        warnings.simplefilter("ignore", IntegrationWarning)
        total, err = quad(sqrt_f, lo, hi, epsabs=_QUAD_TOL, epsrel=_QUAD_TOL, limit=200)
    if not math.isfinite(total) or err > 1e-8 * max(1.0, abs(total)):
        raise NumericFailure("quadrature of sqrt(f) did not converge")

    s_grid = np.linspace(0.0, 1.0, m)
    r_incr = np.empty(m)
    r_incr[0], r_incr[-1] = lo, hi
    r_prev, phi_prev = lo, 0.0
    for idx in range(1, m - 1):
        target = s_grid[idx] * total
        lo_b, hi_b = r_prev, hi
        r_cur, phi_cur = r_prev, phi_prev
        for _ in range(100):
            resid = phi_cur - target
            if abs(resid) <= _INVERT_TOL * max(1.0, total):
                break
            if resid > 0.0:
                hi_b = r_cur
            else:
                lo_b = r_cur
            step = -resid / sqrt_f(r_cur)
            r_next = r_cur + step
            if not lo_b < r_next < hi_b:  # Newton left the bracket; bisect
                r_next = 0.5 * (lo_b + hi_b)
            seg, _ = quad(sqrt_f, r_cur, r_next, epsabs=_QUAD_TOL, epsrel=_QUAD_TOL)
            phi_cur += seg
            r_cur = r_next
        else:
            raise NumericFailure("radius inversion did not converge")
        r_incr[idx] = r_cur
        r_prev, phi_prev = r_cur, phi_cur

    r = r_incr if r1 >= r0 else r_incr[::-1].copy()
    return s_grid, r, total


def _check_endpoints(r0: float, r1: float):
    if r0 == r1:
        raise PreconditionError("endpoint radii must differ (r0 != r1)")
    if min(r0, r1) < R_MIN:
        raise DomainError(f"radii must stay above {R_MIN}")


def solve_concentric_geodesic(
    space: SpaceForm,
    r0: float,
    r1: float,
    m: int = 64,
    n: int = 256,
    frame: PolarFrame | None = None,
) -> tuple[RadiusTrajectory, CurvePath]:
    """Geodesic of concentric circles from radius r0 to r1 on a surface.

    Returns the solved trajectory and the materialized closed-curve path
    around ``frame`` (the model's standard frame by default).
    """
    if space.model is Model.EUCLIDEAN3D:
        raise DomainError("concentric circle families live on 2D space forms")
    _check_endpoints(r0, r1)
    if space.model is Model.SPHERE2D:
        r_max = math.pi / math.sqrt(space.curvature)
        if max(r0, r1) >= r_max:
            raise DomainError("radius reaches the spherical cut locus")

    def sqrt_f(r):
        return math.sqrt(circle_profile_f(space, r))

    s_grid, r, sqrt_E = _solve_radius_profile(sqrt_f, float(r0), float(r1), m)
    E = sqrt_E * sqrt_E
    distance = math.sqrt(2.0 * math.pi * E)

    if frame is None:
        frame = standard_frame(space)
    t = 2.0 * np.pi * np.arange(n) / n
    points = np.stack([exp_polar(space, frame, rj, t) for rj in r])
    path = make_path(space, points, closed=True)
    traj = RadiusTrajectory(
        family=ConcentricCircles(space=space, frame=frame),
        s_grid=s_grid, r=r, conserved=E, distance=distance,
    )
    return traj, path


def solve_helix_geodesic(
    r0: float, r1: float, h: float, m: int = 64, n: int = 256
) -> tuple[RadiusTrajectory, CurvePath]:
    """Geodesic of coaxial pitch-h helices (r cos t, r sin t, h t) in R^3.

    The pitch is fixed along the path (h' = 0 by construction).  Curves
    are open over t in [0, 2 pi) but differentiated with screw-periodic
    stencils, the wrap translating by (0, 0, 2 pi h).
    """
    _check_endpoints(r0, r1)
    h = float(h)

    def sqrt_f(r):
        return math.sqrt(helix_profile_f(r, h))

    s_grid, r, sqrt_E = _solve_radius_profile(sqrt_f, float(r0), float(r1), m)
    E = sqrt_E * sqrt_E
    distance = math.sqrt(2.0 * math.pi * E)

    space = SpaceForm(Model.EUCLIDEAN3D, 0.0)
    t = 2.0 * np.pi * np.arange(n) / n
    points = np.empty((m, n, 3))
    points[:, :, 0] = r[:, None] * np.cos(t)
    points[:, :, 1] = r[:, None] * np.sin(t)
    points[:, :, 2] = h * t
    shift = np.array([0.0, 0.0, 2.0 * np.pi * h])
    path = make_path(space, points, closed=False, t_grid=t, screw_shift=shift)
    traj = RadiusTrajectory(
        family=Helices(pitch=h), s_grid=s_grid, r=r, conserved=E, distance=distance,
    )
    return traj, path


# ---------------------------------------------------------------------------
# sphere check: the pendulum form of the conserved quantity


def pendulum_residual(traj: RadiusTrajectory) -> np.ndarray:
    """Deviation of (u')^2 / cos(u) from its s-mean, with u = pi/2 - r.

    Only defined for unit-sphere circle trajectories (K = 1); u' is
    estimated by fourth-order finite differences on the s-grid.
    """
    fam = traj.family
    if not isinstance(fam, ConcentricCircles) or fam.space.curvature != 1.0:
        raise DomainError("the pendulum form applies to unit-sphere circle families")
    u = 0.5 * math.pi - traj.r
    cos_u = np.cos(u)
    if np.any(np.abs(cos_u) < 1e-8):
        raise DomainError("trajectory touches the equatorial circle (cos u = 0)")
    ds = float(traj.s_grid[1] - traj.s_grid[0])
    u_prime = diff1(u, ds, False, order=4)
    value = u_prime * u_prime / cos_u
    return value - float(np.mean(value))


def conserved_drift(traj: RadiusTrajectory) -> np.ndarray:
    """FD re-evaluation of (r')^2 f(r) minus the stored constant E."""
    fam = traj.family
    if isinstance(fam, ConcentricCircles):
        f_vals = circle_profile_f(fam.space, traj.r)
    else:
        f_vals = helix_profile_f(traj.r, fam.pitch)
    ds = float(traj.s_grid[1] - traj.s_grid[0])
    r_prime = diff1(traj.r, ds, False, order=2)
    return r_prime * r_prime * f_vals - traj.conserved


# ---------------------------------------------------------------------------
# serialization


def trajectory_to_csv(traj: RadiusTrajectory) -> str:
    lines = ["s,r,conserved"]
    E = float(traj.conserved)
    for s, r in zip(traj.s_grid, traj.r):
        lines.append(f"{float(s)!r},{float(r)!r},{E!r}")
    return "\n".join(lines) + "\n"
