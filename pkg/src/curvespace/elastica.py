"""Elastic curves from shape parameters and energy-minimizing paths of them.

An elastic curve in a constant-curvature ambient space is determined (up
to rigid motion) by the amplitude ``k`` of its curvature, the tension
``lambda``, and the torsion constant ``mu = kappa^2 tau``.  The curvature
profile solves the second-order ODE

    kappa_tt = -kappa^3 / 2 + mu^2 / kappa^3 + (lambda - 2 K) kappa / 2,

integrated from the amplitude (kappa(0) = k, kappa_t(0) = 0), and the
curve itself is rebuilt by integrating the Frenet system (or its 2D
intrinsic analogue on a surface) from an initial frame.

Constant profiles kappa = k occur exactly on the circle locus

    k^6 + (2 K - lambda) k^4 - 2 mu^2 = 0.

The sign of the mu^2 term differs between torsion conventions in the
literature; the one used here was fixed empirically by a brute-force
first-variation test of the bending energy on discretized perturbations
of a constant-(kappa, tau) helix (the test lives in the suite and guards
the constant below).

Paths of elastica interpolate (k, lambda, mu) through interior control
points, share one initial-frame gauge, and are scored with the Sobolev
path energy; a seeded simplex search minimizes it over the control
coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import minimize

from .discrete_curves import DiscreteCurve, _normal_2d, build_curve
from .errors import (
    CapabilityError,
    CurveSpaceError,
    DomainError,
    NumericFailure,
    OptimizationFailure,
    PreconditionError,
)
from .sobolev_metric import CurvePath, path_energy, path_from_curves
from .space_forms import (
    Model,
    SpaceForm,
    euclidean3d,
    exp_polar,
    standard_frame,
    surface_of_curvature,
)

# Sign of the 2 mu^2 term in the circle locus (and, with opposite sign, of
# the mu^2/kappa^3 term of the profile ODE).  Fixed once by the
# first-variation oracle; see the module docstring.
MU_LOCUS_SIGN = -1.0

FRAME_TOL = 1e-12


# ---------------------------------------------------------------------------
# parameters and frames


@dataclass(frozen=True)
class FrenetFrame:
    """Position and orthonormal frame of a curve at theta = 0."""

    origin: np.ndarray
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "origin", np.asarray(self.origin, dtype=float))
        object.__setattr__(self, "T", np.asarray(self.T, dtype=float))
        object.__setattr__(self, "N", np.asarray(self.N, dtype=float))
        if self.B is not None:
            object.__setattr__(self, "B", np.asarray(self.B, dtype=float))


def _ambient_space(K: float) -> SpaceForm:
    return euclidean3d() if K == 0.0 else surface_of_curvature(K)


def _validate_frame(space: SpaceForm, frame: FrenetFrame) -> None:
    dim = space.ambient_dim
    for v in (frame.origin, frame.T, frame.N):
        if v.shape != (dim,):
            raise DomainError(f"frame vectors must have dimension {dim}")
    space.check_on_surface(frame.origin)
    g11 = float(space.inner(frame.T, frame.T))
    g22 = float(space.inner(frame.N, frame.N))
    g12 = float(space.inner(frame.T, frame.N))
    if abs(g11 - 1.0) > FRAME_TOL or abs(g22 - 1.0) > FRAME_TOL or abs(g12) > FRAME_TOL:
        raise DomainError("initial frame is not orthonormal to 1e-12")
    if space.curved:
        for v in (frame.T, frame.N):
            resid = v - space.tangent_project(frame.origin, v, check=False)
            if float(space.norm(resid)) > 1e-9:
                raise DomainError("initial frame is not tangent to the surface")
        oriented = _normal_2d(space, frame.origin[None, :], frame.T[None, :])[0]
        if float(space.inner(frame.N, oriented)) < 0.0:
            raise DomainError("initial frame must be positively oriented (N = T rotated by +pi/2)")
    if space.model is Model.EUCLIDEAN3D:
        if frame.B is None:
            raise DomainError("space-curve frames need a binormal")
        if float(np.linalg.norm(frame.B - np.cross(frame.T, frame.N))) > 1e-9:
            raise DomainError("binormal must complete a right-handed frame")


@dataclass(frozen=True)
class ElasticaParams:
    """Shape parameters (k, lambda, mu) plus ambient curvature, length, and frame."""

    k: float
    lam: float
    mu: float
    K: float
    L: float
    frame: FrenetFrame

    def __post_init__(self):
        if self.k < 0.0:
            raise DomainError("curvature amplitude k must be nonnegative")
        if self.mu != 0.0 and self.k <= 0.0:
            raise DomainError("nonzero mu needs positive curvature amplitude")
        if self.L <= 0.0:
            raise DomainError("curve length must be positive")
        _validate_frame(_ambient_space(self.K), self.frame)

    @property
    def space(self) -> SpaceForm:
        return _ambient_space(self.K)


def circle_locus_residual(params: ElasticaParams) -> float:
    """k^6 + (2K - lambda) k^4 + s 2 mu^2; zero iff kappa = k solves the ODE."""
    k, lam, mu, K = params.k, params.lam, params.mu, params.K
    return k**6 + (2.0 * K - lam) * k**4 + MU_LOCUS_SIGN * 2.0 * mu**2


def curvature_rhs(kappa: float, lam: float, mu: float, K: float) -> float:
    """Right-hand side P(kappa) of the profile ODE kappa_tt = P(kappa)."""
    val = -0.5 * kappa**3 + 0.5 * (lam - 2.0 * K) * kappa
    if mu != 0.0:
        val += mu * mu / kappa**3
    return val


def curvature_well(kappa, lam: float, mu: float, K: float):
    """Potential Q with Q' = -2 P; kappa_t^2 + Q(kappa) is conserved."""
    kappa = np.asarray(kappa, dtype=float)
    val = 0.25 * kappa**4 + 0.5 * (2.0 * K - lam) * kappa**2
    if mu != 0.0:
        val = val + mu * mu / kappa**2
    return val


def first_integral(params: ElasticaParams, kappa, kappa_t):
    """The conserved quantity kappa_t^2 + Q(kappa) along a profile."""
    return np.asarray(kappa_t) ** 2 + curvature_well(kappa, params.lam, params.mu, params.K)


# ---------------------------------------------------------------------------
# curvature profile


def solve_curvature_profile(params: ElasticaParams, n: int, *, substeps: int = 4,
                            with_derivative: bool = False):
    """Integrate the profile ODE over [0, L] from the amplitude.

    Classic RK4 on a grid refined by ``substeps``; returns ``n`` samples of
    kappa and tau = mu / kappa^2 (plus the integrator's kappa_t samples
    when ``with_derivative`` is set).  The initial condition kappa(0) = k,
    kappa_t(0) = 0 makes k the curvature maximum whenever P(k) <= 0
    (equivalently, a nonnegative circle-locus residual); for parameters on
    the other side of the locus the profile oscillates above k instead.
    """
    if n < 64:
        raise PreconditionError("profile needs n >= 64 samples")
    k, lam, mu, K = params.k, params.lam, params.mu, params.K
    if k == 0.0:
        if with_derivative:
            return np.zeros(n), np.zeros(n), np.zeros(n)
        return np.zeros(n), np.zeros(n)

    kappa_all, kap_t_all = _batch_profiles(
        np.array([k]), np.array([lam]), np.array([mu]), K,
        np.array([params.L]), n, substeps,
    )
    kappa = kappa_all[0]
    if mu != 0.0:
        tau = mu / kappa**2
    else:
        tau = np.zeros_like(kappa)
    if with_derivative:
        return kappa, tau, kap_t_all[0]
    return kappa, tau


def _batch_profiles(ks, lams, mus, K: float, Ls, n: int, substeps: int):
    """Vectorized RK4 of the profile ODE for a whole family of parameters.

    All parameter arrays have shape (m,); each member integrates over its
    own length with its own step.  Returns kappa and kappa_t as (m, n).
    """
    m = len(ks)
    steps = substeps * (n - 1)
    h = np.asarray(Ls, dtype=float) / steps
    coef = 0.5 * (np.asarray(lams, dtype=float) - 2.0 * K)
    mu2 = np.asarray(mus, dtype=float) ** 2
    torsional = mu2 > 0.0

    def rhs(kv):
        val = -0.5 * kv**3 + coef * kv
        if np.any(torsional):
            with np.errstate(divide="ignore", invalid="ignore"):
                val = val + np.where(torsional, mu2 / kv**3, 0.0)
        return val

    y0 = np.asarray(ks, dtype=float).copy()
    y1 = np.zeros(m)
    kap = np.empty((m, steps + 1))
    kap_t = np.empty((m, steps + 1))
    kap[:, 0], kap_t[:, 0] = y0, y1
    half = 0.5 * h
    for i in range(steps):
        b1 = rhs(y0)
        a2 = y1 + half * b1
        b2 = rhs(y0 + half * y1)
        a3 = y1 + half * b2
        b3 = rhs(y0 + half * a2)
        a4 = y1 + h * b3
        b4 = rhs(y0 + h * a3)
        y0 = y0 + h * (y1 + 2.0 * a2 + 2.0 * a3 + a4) / 6.0
        y1 = y1 + h * (b1 + 2.0 * b2 + 2.0 * b3 + b4) / 6.0
        if not np.all(np.isfinite(y0)) or not np.all(np.isfinite(y1)):
            raise NumericFailure("curvature profile integration blew up")
        if np.any(torsional & (y0 <= 1e-9)):
            raise NumericFailure("curvature reached zero with nonzero torsion constant")
        kap[:, i + 1], kap_t[:, i + 1] = y0, y1
    return kap[:, ::substeps].copy(), kap_t[:, ::substeps].copy()


# ---------------------------------------------------------------------------
# curve reconstruction


def _half_samples(values: np.ndarray) -> np.ndarray:
    """Cubic interpolation of (m, n) profile samples at the grid midpoints."""
    sigma = np.linspace(0.0, 1.0, values.shape[1])
    spline = CubicSpline(sigma, values, axis=1)
    return spline(sigma[:-1] + 0.5 * sigma[1])


def _batch_reconstruct_3d(frames, kappas, taus, Ls, n: int) -> np.ndarray:
    """Frenet reconstruction of a family of space curves in one RK4 sweep.

    ``frames`` is an (m, 4, 3) stack of (origin, T, N, B) rows; ``kappas``
    and ``taus`` are (m, n) profiles; ``Ls`` the per-curve lengths.
    Returns points of shape (m, n, 3).
    """
    m = frames.shape[0]
    h = (np.asarray(Ls, dtype=float) / (n - 1))[:, None, None]
    k_half = _half_samples(kappas)
    t_half = _half_samples(taus)

    def rhs(Y, kv, ta):
        out = np.empty_like(Y)
        out[:, 0] = Y[:, 1]
        out[:, 1] = kv[:, None] * Y[:, 2]
        out[:, 2] = -kv[:, None] * Y[:, 1] + ta[:, None] * Y[:, 3]
        out[:, 3] = -ta[:, None] * Y[:, 2]
        return out

    Y = frames.astype(float).copy()
    points = np.empty((m, n, 3))
    points[:, 0] = Y[:, 0]
    for i in range(n - 1):
        s1 = rhs(Y, kappas[:, i], taus[:, i])
        s2 = rhs(Y + 0.5 * h * s1, k_half[:, i], t_half[:, i])
        s3 = rhs(Y + 0.5 * h * s2, k_half[:, i], t_half[:, i])
        s4 = rhs(Y + h * s3, kappas[:, i + 1], taus[:, i + 1])
        Y = Y + h * (s1 + 2.0 * s2 + 2.0 * s3 + s4) / 6.0
        # keep the transported frames orthonormal
        T = Y[:, 1]
        T /= np.linalg.norm(T, axis=1, keepdims=True)
        N = Y[:, 2] - np.sum(Y[:, 2] * T, axis=1, keepdims=True) * T
        N /= np.linalg.norm(N, axis=1, keepdims=True)
        Y[:, 1], Y[:, 2] = T, N
        Y[:, 3] = np.cross(T, N)
        points[:, i + 1] = Y[:, 0]
    if not np.all(np.isfinite(points)):
        raise NumericFailure("Frenet reconstruction produced non-finite points")
    return points


def _batch_reconstruct_surface(space: SpaceForm, frames, kappas, Ls, n: int) -> np.ndarray:
    """Intrinsic reconstruction on a 2D space form; frames are (m, 3, dim)."""
    m = frames.shape[0]
    K = space.curvature
    h = (np.asarray(Ls, dtype=float) / (n - 1))[:, None, None]
    k_half = _half_samples(kappas)

    def rhs(Y, kv):
        c, T, N = Y[:, 0], Y[:, 1], Y[:, 2]
        out = np.empty_like(Y)
        out[:, 0] = T
        out[:, 1] = kv[:, None] * N - (K * space.inner(T, T))[:, None] * c
        out[:, 2] = -kv[:, None] * T - (K * space.inner(T, N))[:, None] * c
        return out

    Y = frames.astype(float).copy()
    points = np.empty((m, n, space.ambient_dim))
    points[:, 0] = Y[:, 0]
    for i in range(n - 1):
        s1 = rhs(Y, kappas[:, i])
        s2 = rhs(Y + 0.5 * h * s1, k_half[:, i])
        s3 = rhs(Y + 0.5 * h * s2, k_half[:, i])
        s4 = rhs(Y + h * s3, kappas[:, i + 1])
        Y = Y + h * (s1 + 2.0 * s2 + 2.0 * s3 + s4) / 6.0
        if space.curved:
            Y[:, 0] = space.project_to_surface(Y[:, 0])
            Y[:, 1] = space.tangent_project(Y[:, 0], Y[:, 1], check=False)
            Y[:, 2] = space.tangent_project(Y[:, 0], Y[:, 2], check=False)
        T = Y[:, 1]
        T /= space.norm(T)[:, None]
        N = Y[:, 2] - space.inner(Y[:, 2], T)[:, None] * T
        N /= space.norm(N)[:, None]
        Y[:, 1], Y[:, 2] = T, N
        points[:, i + 1] = Y[:, 0]
    if not np.all(np.isfinite(points)):
        raise NumericFailure("surface reconstruction produced non-finite points")
    return points


def reconstruct_curve(params: ElasticaParams, kappa, tau, n: int) -> DiscreteCurve:
    """Frenet reconstruction of the curve with the given profile.

    Euclidean 3-space when K = 0; intrinsic 2D reconstruction on the
    space form of curvature K when the torsion vanishes.  Fourth-order
    one-step integration from ``params.frame``.
    """
    kappa = np.asarray(kappa, dtype=float)
    tau = np.asarray(tau, dtype=float)
    if kappa.shape != (n,) or tau.shape != (n,):
        raise DomainError("profile arrays must have length n")
    frame = params.frame
    if params.K != 0.0:
        if params.mu != 0.0 or np.any(tau != 0.0):
            raise CapabilityError(
                "reconstruction with torsion is only available in Euclidean 3-space (K = 0)"
            )
        space = params.space
        frames = np.stack([frame.origin, frame.T, frame.N])[None]
        points = _batch_reconstruct_surface(space, frames, kappa[None], [params.L], n)[0]
    else:
        space = euclidean3d()
        frames = np.stack([frame.origin, frame.T, frame.N, frame.B])[None]
        points = _batch_reconstruct_3d(frames, kappa[None], tau[None], [params.L], n)[0]
    return build_curve(space, points, closed=False)


def generate_curve(params: ElasticaParams, n: int) -> DiscreteCurve:
    """Profile + reconstruction in one step."""
    kappa, tau = solve_curvature_profile(params, n)
    return reconstruct_curve(params, kappa, tau, n)


# ---------------------------------------------------------------------------
# paths of elastica


@dataclass(frozen=True, eq=False)
class ElasticaPathSpec:
    """Endpoint parameters plus interior control triples for one path.

    All curves share the ambient curvature, the frame directions at
    theta = 0, and the dimensionless length ell = L k: each curve spans
    one full turn of its amplitude-osculating circle, so circle-locus
    parameters reproduce closed round circles.  For K = 0 the gauge
    anchors the osculating center at theta = 0 (concentric circles stay
    concentric); on curved surfaces the start point itself is shared.
    """

    start: ElasticaParams
    end: ElasticaParams
    control_points: np.ndarray
    m: int = 17
    n: int = 128

    def __post_init__(self):
        object.__setattr__(
            self, "control_points", np.atleast_2d(np.asarray(self.control_points, dtype=float))
        )
        if self.start.K != self.end.K:
            raise DomainError("path endpoints must share the ambient curvature")
        if self.control_points.ndim != 2 or self.control_points.shape[1] != 3:
            raise DomainError("control points must be (k, lambda, mu) triples")
        if self.control_points.shape[0] < 1:
            raise PreconditionError("need at least one interior control point")
        if np.any(self.control_points[:, 0] <= 0.0):
            raise DomainError("interior control amplitudes must be positive")
        if self.start.k <= 0.0 or self.end.k <= 0.0:
            raise DomainError("path endpoints need positive curvature amplitude")
        if self.K != 0.0 and (
            self.start.mu != 0.0
            or self.end.mu != 0.0
            or np.any(self.control_points[:, 2] != 0.0)
        ):
            raise CapabilityError("torsion (mu != 0) requires a flat ambient space")
        if self.m < 3:
            raise PreconditionError("paths need m >= 3 samples")

    @property
    def K(self) -> float:
        return self.start.K

    @property
    def q(self) -> int:
        return self.control_points.shape[0]

    @property
    def ell(self) -> float:
        """Shared dimensionless length L * k."""
        return self.start.L * self.start.k


def _gauge_anchor(start: ElasticaParams) -> np.ndarray:
    """Osculating-circle center of the start curve at theta = 0 (flat case)."""
    return start.frame.origin + start.frame.N / start.k


def parameter_trajectory(spec: ElasticaPathSpec):
    """Cubic interpolant of (k, lambda, mu) through endpoints and controls."""
    nodes = np.linspace(0.0, 1.0, spec.q + 2)
    values = np.vstack(
        [
            [spec.start.k, spec.start.lam, spec.start.mu],
            spec.control_points,
            [spec.end.k, spec.end.lam, spec.end.mu],
        ]
    )
    return CubicSpline(nodes, values, axis=0)


def materialize_path(spec: ElasticaPathSpec) -> CurvePath:
    """Generate the m curves of the path in one batched integration."""
    traj = parameter_trajectory(spec)
    s_grid = np.linspace(0.0, 1.0, spec.m)
    values = traj(s_grid)
    ks, lams, mus = values[:, 0], values[:, 1], values[:, 2]
    if spec.K != 0.0:
        mus = np.zeros_like(mus)
    if np.any(ks <= 0.0):
        bad = int(np.argmax(ks <= 0.0))
        raise NumericFailure(
            f"curve generation failed at s-sample {bad}: amplitude left the positive range"
        )
    Ls = spec.ell / ks

    base = spec.start.frame
    try:
        kappas, _ = _batch_profiles(ks, lams, mus, spec.K, Ls, spec.n, substeps=2)
        if spec.K == 0.0:
            origins = _gauge_anchor(spec.start)[None, :] - base.N[None, :] / ks[:, None]
            frames = np.empty((spec.m, 4, 3))
            frames[:, 0] = origins
            frames[:, 1] = base.T
            frames[:, 2] = base.N
            frames[:, 3] = base.B
            with np.errstate(divide="ignore", invalid="ignore"):
                taus = np.where(mus[:, None] != 0.0, mus[:, None] / kappas**2, 0.0)
            points = _batch_reconstruct_3d(frames, kappas, taus, Ls, spec.n)
            space = euclidean3d()
        else:
            frames = np.stack(
                [np.broadcast_to(v, (spec.m, base.origin.size)) for v in (base.origin, base.T, base.N)],
                axis=1,
            )
            points = _batch_reconstruct_surface(
                surface_of_curvature(spec.K), frames, kappas, Ls, spec.n
            )
            space = surface_of_curvature(spec.K)
        curves = [build_curve(space, p, closed=False) for p in points]
    except CurveSpaceError as exc:
        raise NumericFailure(f"curve generation failed along the path: {exc}") from exc
    return path_from_curves(curves)


def elastica_path_energy(spec: ElasticaPathSpec) -> tuple[float, CurvePath]:
    """Materialize the path of elastica and score it with the Sobolev energy."""
    path = materialize_path(spec)
    return path_energy(path), path


# ---------------------------------------------------------------------------
# energy minimization over control coordinates


@dataclass(frozen=True)
class OptimizeOptions:
    seed: int = 0
    max_restarts: int = 3
    max_iter: int = 500
    rel_tol: float = 1e-8
    restart_scale: float = 0.08
    k_bounds_factor: float = 5.0


def _interior_seed(start: ElasticaParams, end: ElasticaParams, q: int) -> np.ndarray:
    s = np.linspace(0.0, 1.0, q + 2)[1:-1][:, None]
    a = np.array([start.k, start.lam, start.mu])
    b = np.array([end.k, end.lam, end.mu])
    return (1.0 - s) * a + s * b


def optimize_elastica_path(
    endpoints: tuple[ElasticaParams, ElasticaParams],
    q: int = 3,
    m: int = 17,
    n: int = 128,
    opts: OptimizeOptions = OptimizeOptions(),
) -> tuple[ElasticaPathSpec, list[tuple[int, float]], CurvePath]:
    """Simplex search over the 3q control coordinates minimizing path energy.

    Runs a deterministic Nelder-Mead descent from the linear-interpolation
    seed plus ``opts.max_restarts`` seeded random restarts around the best
    point.  Returns the best spec, the (evaluation, energy) trace of
    accepted improvements, and the final path.
    """
    start, end = endpoints
    if start.K != end.K:
        raise DomainError("endpoints must share the ambient curvature")
    if q < 1:
        raise PreconditionError("need at least one control point")

    flat = start.K == 0.0
    same = (
        start.k == end.k and start.lam == end.lam and start.mu == end.mu
    )
    if same:
        spec = ElasticaPathSpec(
            start=start, end=end,
            control_points=_interior_seed(start, end, q), m=m, n=n,
        )
        energy, path = elastica_path_energy(spec)
        return spec, [(0, energy)], path

    # reject infeasible endpoints early
    for p in (start, end):
        generate_curve(p, n)

    k_lo = min(start.k, end.k) / opts.k_bounds_factor
    k_hi = max(start.k, end.k) * opts.k_bounds_factor
    n_coords = 3 if flat else 2  # mu frozen at 0 on curved surfaces

    def unpack(x: np.ndarray) -> np.ndarray:
        ctrl = np.zeros((q, 3))
        ctrl[:, :n_coords] = x.reshape(q, n_coords)
        return ctrl

    trace: list[tuple[int, float]] = []
    state = {"best": math.inf, "evals": 0, "best_x": None}

    def objective(x: np.ndarray) -> float:
        state["evals"] += 1
        ctrl = unpack(x)
        if np.any(ctrl[:, 0] < k_lo) or np.any(ctrl[:, 0] > k_hi):
            return math.inf
        try:
            spec = ElasticaPathSpec(start=start, end=end, control_points=ctrl, m=m, n=n)
            energy, _ = elastica_path_energy(spec)
        except CurveSpaceError:
            return math.inf
        if energy < state["best"]:
            state["best"] = energy
            state["best_x"] = x.copy()
            trace.append((state["evals"], energy))
        return energy

    x0 = _interior_seed(start, end, q)[:, :n_coords].ravel()
    objective(x0)  # seeds the trace and the restart base
    rng = np.random.default_rng(opts.seed)
    scale = opts.restart_scale * max(
        abs(start.k - end.k), abs(start.lam - end.lam), abs(start.mu - end.mu), 0.1
    )

    x_init = x0
    for attempt in range(opts.max_restarts + 1):
        before = state["best"]
        fatol = opts.rel_tol * max(1.0, before if math.isfinite(before) else 1.0)
        minimize(
            objective,
            x_init,
            method="Nelder-Mead",
            options={
                "maxiter": opts.max_iter,
                "fatol": fatol,
                "xatol": 1e-6,
                "adaptive": True,
            },
        )
        improved = math.isfinite(state["best"]) and (
            not math.isfinite(before) or before - state["best"] > opts.rel_tol * max(1.0, before)
        )
        if attempt > 0 and not improved:
            break  # restarts stopped helping; the budget is a cap, not a quota
        base = state["best_x"] if state["best_x"] is not None else x0
        x_init = base + rng.normal(scale=scale, size=base.shape)

    if state["best_x"] is None or not math.isfinite(state["best"]):
        raise OptimizationFailure(
            f"no feasible interior point found after {opts.max_restarts} restarts"
        )
    best_spec = ElasticaPathSpec(
        start=start, end=end, control_points=unpack(state["best_x"]), m=m, n=n
    )
    energy, path = elastica_path_energy(best_spec)
    return best_spec, trace, path


# ---------------------------------------------------------------------------
# endpoint serialization


def default_flat_frame(k0: float) -> FrenetFrame:
    """Start frame of a radius 1/k0 circle centered at the origin of R^3."""
    return FrenetFrame(
        origin=np.array([1.0 / k0, 0.0, 0.0]),
        T=np.array([0.0, 1.0, 0.0]),
        N=np.array([-1.0, 0.0, 0.0]),
        B=np.array([0.0, 0.0, 1.0]),
    )


def default_surface_frame(K: float) -> FrenetFrame:
    """A canonical positively-oriented start frame on the surface of curvature K."""
    space = surface_of_curvature(K)
    if not space.curved:
        raise DomainError("use default_flat_frame for K = 0")
    pole = standard_frame(space)
    origin = exp_polar(space, pole, 0.7 * space.radius, 0.0)
    T = np.array([0.0, 1.0, 0.0])
    N = _normal_2d(space, origin[None, :], T[None, :])[0]
    return FrenetFrame(origin=origin, T=T, N=N)


def _frame_from_dict(data: dict, K: float) -> FrenetFrame:
    frame = FrenetFrame(
        origin=np.asarray(data["origin"], dtype=float),
        T=np.asarray(data["T"], dtype=float),
        N=np.asarray(data["N"], dtype=float),
        B=np.asarray(data["B"], dtype=float) if "B" in data and data["B"] is not None else None,
    )
    _validate_frame(_ambient_space(K), frame)
    return frame


def endpoints_from_dict(data: dict) -> tuple[ElasticaParams, ElasticaParams]:
    """Parse the endpoint JSON: shared K, L, init_frame plus two parameter triples.

    The stated L and frame belong to the start curve; the end curve's
    length and gauge frame follow from the shared dimensionless length.
    """
    try:
        K = float(data["K"])
        L = float(data["L"])
        s, e = data["start"], data["end"]
        triples = [(float(d["k"]), float(d["lambda"]), float(d["mu"])) for d in (s, e)]
        frame = _frame_from_dict(data["init_frame"], K)
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"invalid elastica endpoint record: {exc}") from exc
    (k0, lam0, mu0), (k1, lam1, mu1) = triples
    if k0 <= 0.0 or k1 <= 0.0:
        raise DomainError("path endpoints need positive curvature amplitude")
    start = ElasticaParams(k=k0, lam=lam0, mu=mu0, K=K, L=L, frame=frame)
    # the end curve's length and gauge frame follow from the shared ell = L k
    end = ElasticaParams(
        k=k1, lam=lam1, mu=mu1, K=K, L=L * k0 / k1, frame=_end_frame(start, k1)
    )
    return start, end


def _end_frame(start: ElasticaParams, k1: float) -> FrenetFrame:
    base = start.frame
    if start.K == 0.0:
        origin = _gauge_anchor(start) - base.N / k1
        return FrenetFrame(origin=origin, T=base.T, N=base.N, B=base.B)
    return base


def endpoints_to_dict(start: ElasticaParams, end: ElasticaParams) -> dict:
    frame = {
        "origin": start.frame.origin.tolist(),
        "T": start.frame.T.tolist(),
        "N": start.frame.N.tolist(),
    }
    if start.frame.B is not None:
        frame["B"] = start.frame.B.tolist()
    return {
        "K": start.K,
        "L": start.L,
        "start": {"k": start.k, "lambda": start.lam, "mu": start.mu},
        "end": {"k": end.k, "lambda": end.lam, "mu": end.mu},
        "init_frame": frame,
    }
