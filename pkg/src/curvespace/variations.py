"""Variation formulas for length element and curvature, with FD oracles.

For a path of curves c(s, t) the first variations of the scalar geometric
quantities are

    omega' = g(D_T c', T) omega,
    kappa' = g(D_T^2 c', N) - 2 kappa g(D_T c', T) + K g(c', N),

and for normal paths (c' = rho N) additionally omega' = -rho kappa omega.
Each analytic formula is paired with an independent finite-difference
oracle in the path parameter so the identities can be verified on any
discretized family.

Two conserved-quantity identities of normal horizontal families live here
as well: the curvature-conservation residual

    2 kappa kappa_tt - 3 kappa_t^2 - 4 kappa^2 (kappa^2 + K)

(zero exactly when kappa' = 0 along the family) and the parallel-tangent
geodesic constant alpha = (omega')^2 (1 + kappa^2) / (omega kappa^2).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ._fd import diff1
from .discrete_curves import DiscreteCurve, cov_d_T, d_theta
from .errors import DomainError, NormalityError, PreconditionError
from .sobolev_metric import (
    NORMALITY_TOL,
    CurvePath,
    path_velocity,
    rho_normal_component,
    tangential_component,
)
from .space_forms import Model

logger = logging.getLogger(__name__)

VARIATION_QUANTITIES = ("omega", "kappa")


@dataclass(frozen=True, eq=False)
class VariationReport:
    """Analytic prediction vs. finite-difference observation on one sample."""

    quantity: str
    predicted: np.ndarray
    observed: np.ndarray

    @property
    def abs_error(self) -> float:
        return float(np.max(np.abs(self.predicted - self.observed)))


def predicted_omega_variation(path: CurvePath, j: int) -> np.ndarray:
    """g(D_T c', T) omega per t-sample.

    On normal paths the result is cross-checked against the reduced form
    -rho kappa omega; the discrepancy is reported on the module logger.
    """
    curve = path.curves[j]
    v = path_velocity(path, j)
    dv = cov_d_T(curve, v)
    result = np.asarray(curve.space.inner(dv, curve.T)) * curve.omega
    tangential = np.asarray(curve.space.inner(v, curve.T))
    if float(np.max(np.abs(tangential))) <= NORMALITY_TOL:
        rho = np.asarray(curve.space.inner(v, curve.N))
        disc = float(np.max(np.abs(result + rho * curve.kappa * curve.omega)))
        logger.debug("normal path at j=%d: |omega' + rho kappa omega| sup = %.3e", j, disc)
    return result


def normal_omega_discrepancy(path: CurvePath, j: int, *, normal_tol: float = NORMALITY_TOL) -> float:
    """Sup difference between the general formula and -rho kappa omega.

    Only defined on normal paths, where the two expressions agree.
    """
    curve = path.curves[j]
    if float(np.max(np.abs(tangential_component(path, j)))) > normal_tol:
        raise NormalityError("the -rho kappa omega form only applies to normal paths")
    rho = rho_normal_component(path, j)
    general = predicted_omega_variation(path, j)
    return float(np.max(np.abs(general + rho * curve.kappa * curve.omega)))


def predicted_kappa_variation(path: CurvePath, j: int) -> np.ndarray:
    """g(D_T^2 c', N) - 2 kappa g(D_T c', T) + K g(c', N) per t-sample."""
    curve = path.curves[j]
    v = path_velocity(path, j)
    dv = cov_d_T(curve, v)
    ddv = cov_d_T(curve, dv)
    K = curve.space.curvature
    return np.asarray(
        curve.space.inner(ddv, curve.N)
        - 2.0 * curve.kappa * curve.space.inner(dv, curve.T)
        + K * curve.space.inner(v, curve.N)
    )


def fd_variation(path: CurvePath, quantity: str, j: int, eps_steps: int = 1) -> np.ndarray:
    """Centered FD oracle (q(s_{j+k}) - q(s_{j-k})) / (2 k ds), q in {omega, kappa}."""
    if quantity not in VARIATION_QUANTITIES:
        raise DomainError(f"unknown variation quantity {quantity!r}")
    k = int(eps_steps)
    if k < 1:
        raise PreconditionError("eps_steps must be a positive integer")
    if not k <= j <= path.m - 1 - k:
        raise PreconditionError("index too close to the path boundary for the FD oracle")
    q_plus = getattr(path.curves[j + k], quantity)
    q_minus = getattr(path.curves[j - k], quantity)
    return (q_plus - q_minus) / (2.0 * k * path.ds)


def variation_report(path: CurvePath, quantity: str, j: int, eps_steps: int = 1) -> VariationReport:
    if quantity == "omega":
        predicted = predicted_omega_variation(path, j)
    elif quantity == "kappa":
        predicted = predicted_kappa_variation(path, j)
    else:
        raise DomainError(f"unknown variation quantity {quantity!r}")
    observed = fd_variation(path, quantity, j, eps_steps)
    return VariationReport(quantity=quantity, predicted=predicted, observed=observed)


# ---------------------------------------------------------------------------
# conserved quantities of normal horizontal families


def curvature_conservation_residual(curve: DiscreteCurve, K: float | None = None) -> np.ndarray:
    """2 kappa kappa_tt - 3 kappa_t^2 - 4 kappa^2 (kappa^2 + K) per sample.

    Zero along normal horizontal families whose curvature is conserved in s.
    """
    if curve.space.model is Model.EUCLIDEAN3D:
        raise DomainError("curvature conservation residual is a surface (2D) identity")
    if K is None:
        K = curve.space.curvature
    kap = curve.kappa
    kap_t = d_theta(curve, kap)
    kap_tt = d_theta(curve, kap_t)
    return 2.0 * kap * kap_tt - 3.0 * kap_t**2 - 4.0 * kap**2 * (kap**2 + K)


def parallel_geodesic_alpha(
    path: CurvePath,
    *,
    normal_tol: float = NORMALITY_TOL,
    kappa_theta_tol: float = 1e-6,
    spread_tol: float = 1e-6,
) -> np.ndarray:
    """alpha(s) = (omega')^2 (1 + kappa^2) / (omega kappa^2), one value per s.

    Requires a normal family of constant-curvature curves (kappa_theta = 0
    within tolerance); equal values across s characterize a geodesic.  The
    expression is evaluated at t = 0 after checking its relative spread
    over t stays below ``spread_tol``.
    """
    omegas = np.stack([c.omega for c in path.curves])
    omega_prime = diff1(omegas, path.ds, False, order=2)
    if float(np.max(np.abs(omega_prime))) < 1e-12:
        raise PreconditionError("constant path: alpha is degenerate (omega' = 0)")
    alphas = np.empty(path.m)
    for j, curve in enumerate(path.curves):
        if float(np.max(np.abs(tangential_component(path, j)))) > normal_tol:
            raise NormalityError("alpha requires a normal path")
        kap_scale = float(np.max(np.abs(curve.kappa)))
        if kap_scale < 1e-8:
            raise DomainError("alpha is undefined for geodesic (kappa = 0) curves")
        kap_t = d_theta(curve, curve.kappa)
        if float(np.max(np.abs(kap_t))) > kappa_theta_tol * max(1.0, kap_scale):
            raise PreconditionError("alpha requires constant-curvature curves (kappa_theta = 0)")
        field = (
            omega_prime[j] ** 2 * (1.0 + curve.kappa**2) / (curve.omega * curve.kappa**2)
        )
        mean = float(np.mean(field))
        if mean != 0.0 and float(np.max(np.abs(field - mean))) > spread_tol * abs(mean):
            raise PreconditionError("alpha expression is not t-independent on this family")
        alphas[j] = field[0]
    return alphas


def shortening_flow_field(curve: DiscreteCurve) -> np.ndarray:
    """The flow field kappa N of the curve-shortening flow (2D curves)."""
    if curve.space.model is Model.EUCLIDEAN3D:
        raise DomainError("the shortening flow field is defined for 2D curves")
    return curve.kappa[:, None] * curve.N
