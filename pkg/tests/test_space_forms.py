import math

import numpy as np
import pytest

from curvespace import (
    DomainError,
    Model,
    SpaceForm,
    euclidean3d,
    exp_polar,
    hyperbolic,
    jacobi_residual,
    omega_profile,
    plane,
    polar_frame,
    space_from_dict,
    space_to_dict,
    sphere,
    standard_frame,
)


def minkowski(u, v):
    return u[0] * v[0] + u[1] * v[1] - u[2] * v[2]


class TestSpaceFormValidation:
    def test_curvature_sign_must_match_model(self):
        with pytest.raises(DomainError):
            SpaceForm(Model.SPHERE2D, -1.0)
        with pytest.raises(DomainError):
            SpaceForm(Model.HYPERBOLIC2D, 0.5)
        with pytest.raises(DomainError):
            SpaceForm(Model.PLANE2D, 0.1)

    def test_ambient_dims(self):
        assert plane().ambient_dim == 2
        assert sphere(2.0).ambient_dim == 3
        assert hyperbolic(-0.5).ambient_dim == 3
        assert euclidean3d().ambient_dim == 3


class TestOmegaProfile:
    def test_sphere_quarter_turn(self):
        om, om_r = omega_profile(sphere(1.0), math.pi / 2)
        assert om == pytest.approx(1.0, abs=1e-14)
        assert om_r == pytest.approx(0.0, abs=1e-14)

    def test_flat_profile_is_radius(self):
        om, om_r = omega_profile(plane(), 2.0)
        assert om == 2.0
        assert om_r == 1.0

    def test_hyperbolic_small_radius_limit(self):
        om, om_r = omega_profile(hyperbolic(-1.0), 1e-7)
        assert om == pytest.approx(1e-7, rel=1e-12)
        assert om_r == pytest.approx(1.0, abs=1e-12)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            omega_profile(plane(), 0.0)
        with pytest.raises(DomainError):
            omega_profile(plane(), -1.0)
        with pytest.raises(DomainError):
            omega_profile(sphere(1.0), math.pi)

    def test_continuity_in_curvature_at_zero(self):
        # |omega(K, r) - r| <= 1e-6 r^3 for |K| <= 1e-6 on (0, 3]
        r = np.linspace(1e-3, 3.0, 400)
        for K in (1e-6, -1e-6, 1e-9, -1e-9):
            space = sphere(K) if K > 0 else hyperbolic(K)
            om, _ = omega_profile(space, r)
            assert np.all(np.abs(om - r) <= 1e-6 * r**3 + 1e-15)

    def test_series_and_closed_form_agree_at_threshold(self):
        # both branches within roundoff near |K| r^2 = 1e-8
        for K in (1e-4, -1e-4):
            space = sphere(K) if K > 0 else hyperbolic(K)
            r = np.array([0.9e-2, 1.1e-2])  # straddles the switch
            om, om_r = omega_profile(space, r)
            exact = np.sin(np.sqrt(abs(K)) * r) / np.sqrt(abs(K)) if K > 0 else \
                np.sinh(np.sqrt(-K) * r) / np.sqrt(-K)
            assert np.allclose(om, exact, rtol=1e-12)


class TestJacobiResidual:
    @pytest.mark.parametrize("space,r", [
        (sphere(1.0), 0.7),
        (hyperbolic(-1.0), 1.3),
    ])
    def test_pointwise(self, space, r):
        assert abs(jacobi_residual(space, r)) <= 1e-12

    def test_flat_exact(self):
        assert jacobi_residual(plane(), 1.7) == 0.0

    def test_grid_uniform(self):
        for space, r_hi in ((sphere(1.0), math.pi - 1e-3), (plane(), 3.0), (hyperbolic(-1.0), 3.0)):
            r = np.linspace(1e-3, r_hi, 1000)
            assert np.max(np.abs(jacobi_residual(space, r))) <= 1e-10

    def test_general_curvature_magnitudes(self):
        for K in (2.3, 0.04):
            r = np.linspace(1e-3, math.pi / math.sqrt(K) - 1e-3, 500)
            assert np.max(np.abs(jacobi_residual(sphere(K), r))) <= 1e-10
        for K in (-2.3, -0.04):
            r = np.linspace(1e-3, 2.0, 500)
            assert np.max(np.abs(jacobi_residual(hyperbolic(K), r))) <= 1e-10


class TestExpPolar:
    def test_plane_translation(self):
        fr = standard_frame(plane())
        p = exp_polar(plane(), fr, 1.0, 0.0)
        assert np.allclose(p, [1.0, 0.0], atol=1e-15)

    def test_sphere_equator(self):
        sp = sphere(1.0)
        fr = standard_frame(sp)
        for t in (0.0, 1.1, 4.0):
            p = exp_polar(sp, fr, math.pi / 2, t)
            assert abs(p[2]) <= 1e-15
            assert abs(np.linalg.norm(p) - 1.0) <= 1e-15

    def test_hyperboloid_point_stays_on_model(self):
        hy = hyperbolic(-1.0)
        fr = standard_frame(hy)
        p = exp_polar(hy, fr, 0.5, math.pi / 2)
        assert abs(minkowski(p, p) + 1.0) <= 1e-12

    def test_radius_scales_both_frame_legs(self):
        # the polar circle must sit at geodesic distance r for every t
        sp = sphere(1.0)
        fr = standard_frame(sp)
        r = 0.8
        for t in np.linspace(0.0, 2 * math.pi, 9, endpoint=False):
            p = exp_polar(sp, fr, r, t)
            dist = math.acos(np.clip(np.dot(p, fr.center), -1, 1))
            assert dist == pytest.approx(r, abs=1e-12)

    def test_vectorized_over_t(self):
        sp = sphere(1.0)
        fr = standard_frame(sp)
        t = np.linspace(0, 2 * math.pi, 16, endpoint=False)
        pts = exp_polar(sp, fr, 0.3, t)
        assert pts.shape == (16, 3)

    def test_output_stays_on_the_model(self):
        t = np.linspace(0, 2 * math.pi, 24, endpoint=False)
        for space, radii in (
            (sphere(2.3), np.linspace(0.1, math.pi / math.sqrt(2.3) - 0.05, 20)),
            (hyperbolic(-2.3), np.linspace(0.1, 2.0, 20)),
            (hyperbolic(-0.04), np.linspace(0.1, 2.0, 20)),
        ):
            fr = standard_frame(space)
            for r in radii:
                pts = exp_polar(space, fr, r, t)
                assert float(np.max(space.surface_distance(pts))) <= 1e-9


class TestTangentProject:
    def test_flat_identity(self):
        sp = plane()
        v = np.array([0.3, -2.0])
        assert np.array_equal(sp.tangent_project([5.0, 1.0], v), v)

    def test_sphere_radial_killed(self):
        sp = sphere(1.0)
        p = np.array([0.0, 0.0, 1.0])
        assert np.max(np.abs(sp.tangent_project(p, p))) <= 1e-12

    def test_sphere_example(self):
        sp = sphere(1.0)
        out = sp.tangent_project(np.array([1.0, 0.0, 0.0]), np.array([0.3, 0.4, 0.0]))
        assert np.allclose(out, [0.0, 0.4, 0.0], atol=1e-15)

    @pytest.mark.parametrize("space,point", [
        (sphere(1.0), np.array([0.6, 0.0, 0.8])),
        (hyperbolic(-1.0), np.array([np.sinh(0.9), 0.0, np.cosh(0.9)])),
    ])
    def test_linear_and_idempotent(self, space, point):
        rng = np.random.default_rng(3)
        for _ in range(5):
            u = rng.normal(size=3)
            v = rng.normal(size=3)
            a, b = rng.normal(size=2)
            lin = space.tangent_project(point, a * u + b * v)
            sep = a * space.tangent_project(point, u) + b * space.tangent_project(point, v)
            assert np.max(np.abs(lin - sep)) <= 1e-12
            once = space.tangent_project(point, u)
            assert np.max(np.abs(space.tangent_project(point, once) - once)) <= 1e-12
            # result is tangent: orthogonal to the position in the right metric
            assert abs(space.inner(once, point)) <= 1e-12 * (1 + np.max(np.abs(once)))

    def test_off_surface_point_rejected(self):
        with pytest.raises(DomainError):
            sphere(1.0).tangent_project(np.array([2.0, 0.0, 0.0]), np.array([1.0, 0.0, 0.0]))


class TestPolarFrame:
    def test_standard_frames_valid(self):
        for space in (plane(), sphere(2.0), hyperbolic(-0.7), euclidean3d()):
            fr = standard_frame(space)
            assert abs(float(space.inner(fr.e1, fr.e2))) <= 1e-12

    def test_orthonormality_enforced(self):
        sp = sphere(1.0)
        c = np.array([0.0, 0.0, 1.0])
        with pytest.raises(DomainError):
            polar_frame(sp, c, [1.1, 0.0, 0.0], [0.0, 1.0, 0.0])
        with pytest.raises(DomainError):
            polar_frame(sp, c, [1.0, 0.0, 0.0], [1.0, 0.0, 0.0])

    def test_non_tangent_rejected(self):
        sp = sphere(1.0)
        with pytest.raises(DomainError):
            polar_frame(sp, [0.0, 0.0, 1.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0])


class TestSerialization:
    def test_round_trip(self):
        for space in (plane(), sphere(0.5), hyperbolic(-2.0), euclidean3d()):
            assert space_from_dict(space_to_dict(space)) == space

    def test_json_field_names(self):
        d = space_to_dict(sphere(1.0))
        assert d == {"model": "sphere2d", "curvature": 1.0}

    def test_invalid_rejected(self):
        with pytest.raises(DomainError):
            space_from_dict({"model": "klein", "curvature": 1.0})
        with pytest.raises(DomainError):
            space_from_dict({"curvature": 1.0})
