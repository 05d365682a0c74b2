"""Single-cavity expulsion force: the local pressure integrated over a wing.

The pressure is independent of the transverse coordinate, so the
transverse integral contributes the exact factor L and the force reduces
to a one-dimensional quadrature over the wing coordinate:

    F = L * integral_0^R P(r) dr.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .constants import PhysicalConstants
from .errors import ValidationError
from .geometry import CavityGeometry, local_pressure
from .quadrature import QuadratureSettings, adaptive_quadrature


@dataclass(frozen=True)
class ForceResult:
    """Signed x-component force (N) with quadrature metadata."""

    force: float
    abs_error_estimate: float  # N, same L scaling as the force
    evaluations: int


def wing_force(geom: CavityGeometry,
               constants: PhysicalConstants = PhysicalConstants(),
               settings: QuadratureSettings = QuadratureSettings()) -> ForceResult:
    """Expulsion force of one cavity, adaptive quadrature over [0, R]."""
    value, err, n_eval = adaptive_quadrature(
        lambda r: local_pressure(r, geom, constants), 0.0, geom.R, settings)
    return ForceResult(force=geom.L * value,
                       abs_error_estimate=geom.L * err,
                       evaluations=n_eval)


def wing_force_at_separation(geom: CavityGeometry, separation: float,
                             constants: PhysicalConstants = PhysicalConstants(),
                             settings: QuadratureSettings = QuadratureSettings(),
                             ) -> ForceResult:
    """wing_force with the wing-end separation swapped out.

    Used for the gap cavities of a periodic structure: same R, L and
    opening angle, separation d instead of a.
    """
    if not (separation > 0.0):
        raise ValidationError(f"separation must be > 0 (got {separation!r})")
    return wing_force(replace(geom, a=separation), constants, settings)
