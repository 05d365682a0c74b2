"""Geometric kernel: limit angles, effective separation, angular integral."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from casimir_expulsion import (CavityGeometry, DomainError, PhysicalConstants,
                               SingularityError, ValidationError,
                               angular_integral, effective_separation,
                               limit_angle_lower, limit_angle_upper,
                               limit_angles, local_pressure,
                               pressure_integrand)

# High-precision reference values (mpmath, 40 digits), frozen as fixtures.
THETA_LOWER_REF = 0.93524743262087185   # r=5e-9, a=4e-9, R=1e-8, phi=0.1
THETA_UPPER_REF = 2.5063786547097164    # r=5e-9, a=4e-9, phi=0.1
S_AT_R0_REF = 3.9800166611121031e-9     # r=0, a=4e-9, phi=0.1
S_AT_R1E8_REF = 4.9933352080481465e-9   # r=1e-8, a=4e-9, phi=0.05
ANGULAR_INTEGRAL_REF = -0.21896620211863814  # phi=0.1, 1.8 -> 2.6
INTEGRAND_REF = -0.29077411169474447    # theta=2.0, phi=0.1
PRESSURE_REF = 176821.64107470004       # r=5e-9, a=4e-9, R=1e-8, phi=0.0976


class TestValidation:
    def test_constants_defaults(self):
        c = PhysicalConstants()
        assert c.hbar == 1.054571817e-34
        assert c.c == 299792458.0

    @pytest.mark.parametrize("kwargs", [dict(hbar=0.0), dict(hbar=-1.0),
                                        dict(c=0.0), dict(c=-1.0)])
    def test_constants_rejects_nonpositive(self, kwargs):
        with pytest.raises(ValidationError):
            PhysicalConstants(**kwargs)

    @pytest.mark.parametrize("kwargs", [
        dict(a=0.0, R=1e-8),           # triangle limit: kernel non-integrable
        dict(a=-1e-9, R=1e-8),
        dict(a=4e-9, R=0.0),
        dict(a=4e-9, R=1e-8, L=0.0),
        dict(a=4e-9, R=1e-8, phi=math.pi / 4),
        dict(a=4e-9, R=1e-8, phi=-0.01),
    ])
    def test_geometry_rejects_invalid(self, kwargs):
        with pytest.raises(ValidationError):
            CavityGeometry(**kwargs)

    def test_r_outside_wing_rejected(self):
        geom = CavityGeometry(a=4e-9, R=1e-8)
        with pytest.raises(ValidationError):
            limit_angle_lower(-1e-10, geom)
        with pytest.raises(ValidationError):
            limit_angle_upper(1.1e-8, geom)


class TestLimitAngles:
    def test_lower_at_wing_end_parallel(self):
        # numerator -(r - R) vanishes at r = R for phi = 0
        geom = CavityGeometry(a=3e-9, R=1e-8, phi=0.0)
        assert limit_angle_lower(geom.R, geom) == pytest.approx(math.pi / 2,
                                                                abs=1e-15)

    def test_lower_at_origin_parallel(self):
        a, R = 4e-9, 1e-8
        geom = CavityGeometry(a=a, R=R, phi=0.0)
        expected = math.acos(R / math.hypot(a, R))
        assert limit_angle_lower(0.0, geom) == pytest.approx(expected,
                                                             rel=1e-14)

    def test_lower_reference_value(self):
        geom = CavityGeometry(a=4e-9, R=1e-8, phi=0.1)
        assert limit_angle_lower(5e-9, geom) == pytest.approx(THETA_LOWER_REF,
                                                              rel=1e-13)

    def test_upper_at_origin_parallel(self):
        geom = CavityGeometry(a=4e-9, R=1e-8, phi=0.0)
        assert limit_angle_upper(0.0, geom) == pytest.approx(math.pi / 2,
                                                             abs=1e-15)

    def test_upper_at_r_equal_a_parallel(self):
        geom = CavityGeometry(a=4e-9, R=1e-8, phi=0.0)
        assert limit_angle_upper(4e-9, geom) == pytest.approx(3 * math.pi / 4,
                                                              rel=1e-14)

    def test_upper_reference_value(self):
        geom = CavityGeometry(a=4e-9, R=1e-8, phi=0.1)
        assert limit_angle_upper(5e-9, geom) == pytest.approx(THETA_UPPER_REF,
                                                              rel=1e-13)

    def test_ordering_on_random_geometries(self):
        rng = np.random.default_rng(42)
        for _ in range(50):
            a = rng.uniform(1e-9, 1e-8)
            geom = CavityGeometry(a=a, R=a * rng.uniform(1.0, 20.0),
                                  phi=rng.uniform(0.0, 0.3))
            r = rng.uniform(0.0, geom.R, size=64)
            lower = limit_angle_lower(r, geom)
            upper = limit_angle_upper(r, geom)
            assert np.all(lower <= upper + 1e-15)
            assert np.all((0.0 <= lower) & (upper <= np.pi))

    def test_endpoints_stay_finite(self):
        # clamped arccos must never emit non-finite values at r = 0, R
        rng = np.random.default_rng(7)
        for _ in range(50):
            a = rng.uniform(1e-9, 1e-8)
            geom = CavityGeometry(a=a, R=a * rng.uniform(1.0, 20.0),
                                  phi=rng.uniform(0.0, 0.3))
            pair = limit_angles(0.0, geom)
            assert math.isfinite(pair.theta_lower)
            assert math.isfinite(pair.theta_upper)
            pair = limit_angles(geom.R, geom)
            assert math.isfinite(pair.theta_lower)
            assert math.isfinite(pair.theta_upper)


class TestEffectiveSeparation:
    def test_parallel_plates_collapse_to_a(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            a = rng.uniform(1e-9, 1e-8)
            geom = CavityGeometry(a=a, R=a * rng.uniform(1.0, 20.0), phi=0.0)
            r = rng.uniform(0.0, geom.R)
            assert effective_separation(r, geom) == pytest.approx(a, rel=1e-14)

    def test_reference_values(self):
        geom = CavityGeometry(a=4e-9, R=1e-8, phi=0.1)
        assert effective_separation(0.0, geom) == pytest.approx(S_AT_R0_REF,
                                                                rel=1e-13)
        geom = CavityGeometry(a=4e-9, R=1e-8, phi=0.05)
        assert effective_separation(1e-8, geom) == pytest.approx(S_AT_R1E8_REF,
                                                                 rel=1e-13)

    def test_singularity_guard(self):
        geom = CavityGeometry(a=4e-9, R=1e-8, phi=0.1)
        with pytest.raises(SingularityError):
            effective_separation(5e-9, geom, theta_upper=geom.phi)


class TestAngularIntegral:
    def test_zero_at_equal_limits(self):
        for phi in (0.0, 0.1, 0.4):
            for theta in (0.0, 1.0, 2.5, math.pi):
                assert angular_integral(phi, theta, theta) == 0.0

    def test_parallel_plate_spot_value(self):
        # antiderivative at phi = 0 is sin^5/5, so the integral over
        # [pi/2, pi] is 0 - 1/5
        expected = (math.sin(math.pi) ** 5 - math.sin(math.pi / 2) ** 5) / 5.0
        assert expected == -0.2
        assert angular_integral(0.0, math.pi / 2, math.pi) == pytest.approx(
            -0.2, rel=1e-15)

    def test_reference_value(self):
        assert angular_integral(0.1, 1.8, 2.6) == pytest.approx(
            ANGULAR_INTEGRAL_REF, rel=1e-14)

    def test_matches_quadrature(self):
        # independent oracle: scipy QUADPACK on the raw integrand
        rng = np.random.default_rng(11)
        for _ in range(25):
            phi = rng.uniform(0.0, 0.5)
            t1 = rng.uniform(0.0, math.pi)
            t2 = rng.uniform(0.0, math.pi)
            expected, _ = quad(lambda t: pressure_integrand(t, phi), t1, t2,
                               epsabs=1e-14, epsrel=1e-13)
            assert angular_integral(phi, t1, t2) == pytest.approx(
                expected, rel=1e-10, abs=1e-13)

    def test_antisymmetry(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            phi = rng.uniform(0.0, 0.5)
            t1 = rng.uniform(0.0, math.pi)
            t2 = rng.uniform(0.0, math.pi)
            forward = angular_integral(phi, t1, t2)
            backward = angular_integral(phi, t2, t1)
            assert forward == pytest.approx(-backward, abs=1e-15)

    def test_derivative_matches_integrand(self):
        # d/d(theta_upper) of the closed form is the integrand itself
        step = 1e-6
        rng = np.random.default_rng(17)
        for _ in range(30):
            phi = rng.uniform(0.0, 0.5)
            t1 = rng.uniform(0.0, math.pi)
            t2 = rng.uniform(0.1, math.pi - 0.1)
            derivative = (angular_integral(phi, t1, t2 + step)
                          - angular_integral(phi, t1, t2 - step)) / (2 * step)
            expected = pressure_integrand(t2, phi)
            assert derivative == pytest.approx(expected, rel=1e-6, abs=1e-9)


class TestPressureIntegrand:
    def test_zeros(self):
        assert pressure_integrand(0.2, 0.1) == 0.0  # theta = 2 phi
        assert pressure_integrand(0.1 + math.pi / 2, 0.1) == pytest.approx(
            0.0, abs=1e-16)

    def test_reference_value(self):
        assert pressure_integrand(2.0, 0.1) == pytest.approx(INTEGRAND_REF,
                                                             rel=1e-15)


class TestLocalPressure:
    def test_zero_kernel_gives_zero_pressure(self):
        # at phi = 0 the angular integral vanishes by symmetry at r = R/2
        geom = CavityGeometry(a=4e-9, R=1e-8, phi=0.0)
        pressure = local_pressure(geom.R / 2.0, geom)
        scale = abs(local_pressure(0.0, geom))
        assert abs(pressure) < 1e-12 * scale

    def test_parallel_plate_reduction(self):
        # at phi = 0: P = -(hbar c pi^2 / 240 a^4) (sin^5 up - sin^5 lo)/5
        constants = PhysicalConstants()
        geom = CavityGeometry(a=4e-9, R=1e-8, phi=0.0)
        rng = np.random.default_rng(23)
        for r in rng.uniform(0.0, geom.R, size=20):
            lo = limit_angle_lower(r, geom)
            up = limit_angle_upper(r, geom)
            expected = (-(constants.hbar * constants.c * math.pi ** 2
                          / (240.0 * geom.a ** 4))
                        * (math.sin(up) ** 5 - math.sin(lo) ** 5) / 5.0)
            assert local_pressure(r, geom, constants) == pytest.approx(
                expected, rel=1e-12, abs=1e-20)

    def test_reference_value(self):
        geom = CavityGeometry(a=4e-9, R=1e-8, phi=0.0976)
        assert local_pressure(5e-9, geom) == pytest.approx(PRESSURE_REF,
                                                           rel=1e-12)

    def test_vectorized_matches_scalar(self):
        geom = CavityGeometry(a=4e-9, R=1e-8, phi=0.08)
        r = np.linspace(0.0, geom.R, 17)
        vec = local_pressure(r, geom)
        scalars = np.array([local_pressure(float(x), geom) for x in r])
        assert np.array_equal(vec, scalars)
