"""Geometric kernel of the trapezoid-cavity expulsion model.

A single open cavity is two mirror wings of length ``R`` separated by
``a`` at the narrow end, each tilted outward by the half-opening angle
``phi``. Every quantity here is evaluated at one point ``r`` along a
wing: the two limit angles subtended by the opposite wing, the effective
mirror separation ``s`` entering the 1/s^4 pressure kernel, and the
local expulsion pressure

    P(r) = -(hbar c pi^2 / (240 s^4)) * K(phi, th_lo, th_up),

where K is the closed-form value of the angular integral

    K = integral_{th_lo}^{th_up} sin^4(th - 2 phi) cos(th - phi) dth.

All functions are pure and accept scalar or ndarray ``r`` / angles.
Angles are radians everywhere; lengths are meters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import PhysicalConstants
from .errors import DomainError, SingularityError, ValidationError

# Half-opening angles are only validated on [0, pi/4): beyond that the
# effective-separation formula changes sign structure and the model's
# first-approximation assumptions break down.
PHI_MAX = np.pi / 4.0

# arccos arguments within this distance outside [-1, 1] are treated as
# floating-point noise and clamped; anything further is a real domain
# violation.
ARCCOS_CLAMP_TOL = 1e-12

# |sin(phi - th_up)| below this is an exact geometric singularity.
SIN_SINGULARITY_TOL = 1e-15


@dataclass(frozen=True)
class CavityGeometry:
    """One symmetric trapezoid cavity.

    a: separation between the nearest wing ends (m), > 0
    R: wing surface length (m), > 0
    L: cavity width along y (m), > 0; forces scale linearly in L
    phi: half-opening angle (rad), in [0, pi/4)
    """

    a: float
    R: float
    L: float = 1.0
    phi: float = 0.0

    def __post_init__(self):
        if not (self.a > 0.0):
            raise ValidationError(f"a must be > 0 (got {self.a!r}); "
                                  "a = 0 makes the pressure kernel non-integrable")
        if not (self.R > 0.0):
            raise ValidationError(f"R must be > 0 (got {self.R!r})")
        if not (self.L > 0.0):
            raise ValidationError(f"L must be > 0 (got {self.L!r})")
        if not (0.0 <= self.phi < PHI_MAX):
            raise ValidationError(
                f"phi must lie in [0, pi/4) rad (got {self.phi!r})")


@dataclass(frozen=True)
class AnglePair:
    """Lower and upper limit angles at one wing point, th_lo <= th_up."""

    theta_lower: float
    theta_upper: float


def _safe_arccos(x):
    """arccos with a noise-tolerant clamp to [-1, 1].

    Arguments within ARCCOS_CLAMP_TOL outside the interval are clamped;
    larger excursions raise DomainError (invalid geometry, not noise).
    """
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0 + ARCCOS_CLAMP_TOL) or not np.all(np.isfinite(x)):
        raise DomainError(
            "arccos argument outside [-1, 1] beyond clamping tolerance; "
            "geometry is outside the model's valid domain")
    return np.arccos(np.clip(x, -1.0, 1.0))


def _check_r(r, geom: CavityGeometry):
    r = np.asarray(r, dtype=float)
    if np.any(r < 0.0) or np.any(r > geom.R):
        raise ValidationError("r must lie in [0, R]")
    return r


def limit_angle_lower(r, geom: CavityGeometry):
    """Limit angle of the ray from wing point r to the far (opening-side)
    end of the opposite wing. Result in [0, pi]."""
    r = _check_r(r, geom)
    a, R, phi = geom.a, geom.R, geom.phi
    num = -(r + a * np.sin(phi) - R * np.cos(2.0 * phi))
    den = np.hypot(a + (R + r) * np.sin(phi), (r - R) * np.cos(phi))
    out = _safe_arccos(num / den)
    return float(out) if out.ndim == 0 else out


def limit_angle_upper(r, geom: CavityGeometry):
    """Limit angle of the ray from wing point r to the near (narrow-side)
    end of the opposite wing. Result in [pi/2, pi] for r, a > 0, phi >= 0."""
    r = _check_r(r, geom)
    a, phi = geom.a, geom.phi
    num = -(r + a * np.sin(phi))
    den = np.sqrt(a * a + r * r + 2.0 * r * a * np.sin(phi))
    if np.any(den <= 0.0):
        raise DomainError("a^2 + r^2 + 2 r a sin(phi) must be > 0")
    out = _safe_arccos(num / den)
    return float(out) if out.ndim == 0 else out


def limit_angles(r: float, geom: CavityGeometry) -> AnglePair:
    """Both limit angles at a single wing point."""
    return AnglePair(limit_angle_lower(r, geom), limit_angle_upper(r, geom))


def effective_separation(r, geom: CavityGeometry, theta_upper=None):
    """Effective mirror separation s (m) at wing point r.

    s = sin(2 phi - th_up) (a + r sin phi) / sin(phi - th_up),
    with th_up the upper limit angle. Collapses to s = a at phi = 0.
    """
    r = _check_r(r, geom)
    if theta_upper is None:
        theta_upper = limit_angle_upper(r, geom)
    theta_upper = np.asarray(theta_upper, dtype=float)
    phi = geom.phi
    den = np.sin(phi - theta_upper)
    if np.any(np.abs(den) < SIN_SINGULARITY_TOL):
        raise SingularityError("sin(phi - theta_upper) vanished; "
                               "effective separation is undefined")
    s = np.sin(2.0 * phi - theta_upper) * (geom.a + r * np.sin(phi)) / den
    if np.any(s <= 0.0):
        raise DomainError("non-positive effective separation s; "
                          "geometry is outside the model's valid domain")
    return float(s) if s.ndim == 0 else s


def pressure_integrand(theta, phi):
    """Angular integrand sin^4(theta - 2 phi) cos(theta - phi)."""
    theta = np.asarray(theta, dtype=float)
    out = np.sin(theta - 2.0 * phi) ** 4 * np.cos(theta - phi)
    return float(out) if out.ndim == 0 else out


def angular_integral(phi, theta_lower, theta_upper):
    """Closed-form value of the angular integral between the limit angles.

    Ten-term sine expansion (prefactor 1/240); equals the antiderivative
    difference of pressure_integrand, hence antisymmetric under swapping
    the two limit angles.
    """
    phi = np.asarray(phi, dtype=float)
    t1 = np.asarray(theta_lower, dtype=float)
    t2 = np.asarray(theta_upper, dtype=float)
    out = (
        90.0 * np.sin(phi - t1) - 90.0 * np.sin(phi - t2)
        + 60.0 * np.sin(3.0 * phi - t2) - 60.0 * np.sin(3.0 * phi - t1)
        + 20.0 * np.sin(5.0 * phi - 3.0 * t2) - 20.0 * np.sin(5.0 * phi - 3.0 * t1)
        + 5.0 * np.sin(7.0 * phi - 3.0 * t1) - 5.0 * np.sin(7.0 * phi - 3.0 * t2)
        + 3.0 * np.sin(9.0 * phi - 5.0 * t1) - 3.0 * np.sin(9.0 * phi - 5.0 * t2)
    ) / 240.0
    return float(out) if out.ndim == 0 else out


def local_pressure(r, geom: CavityGeometry,
                   constants: PhysicalConstants = PhysicalConstants()):
    """Local specific expulsion pressure (N/m^2) at wing point r.

    P(r) = -(hbar c pi^2 / (240 s^4)) * K(phi, th_lo, th_up).
    Negative values mean thrust along -x (toward the least opening);
    reported curves and surfaces use magnitudes.
    """
    r = _check_r(r, geom)
    th_lo = limit_angle_lower(r, geom)
    th_up = limit_angle_upper(r, geom)
    s = effective_separation(r, geom, theta_upper=th_up)
    kernel = angular_integral(geom.phi, th_lo, th_up)
    prefactor = constants.hbar * constants.c * np.pi ** 2 / 240.0
    out = -prefactor * np.asarray(kernel) / np.asarray(s) ** 4
    return float(out) if out.ndim == 0 else out
