"""Periodic composition of trapezoid cavities with an inter-cavity gap.

n cavities at gap distance d form n-1 reversed cavities, so the total
expulsion force is

    F_total = n F(a) - (n - 1) F(d),

which cancels to the single-cavity force when d = a. The expulsion
effectiveness is the total force per unit transverse structure length,

    Q = F_total / [n (a + 2 R tan phi) + (n - 1) d],

with an exact closed-form n -> infinity limit

    Q_inf = (F(a) - F(d)) / (a + 2 R tan phi + d).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import PhysicalConstants
from .errors import ValidationError
from .geometry import CavityGeometry
from .quadrature import QuadratureSettings
from .wing_force import wing_force, wing_force_at_separation

# Cavity-count marker for the exact n -> infinity limit.
ASYMPTOTIC = math.inf


@dataclass(frozen=True)
class PeriodicStructure:
    """A cavity geometry repeated n times with gap distance d (m).

    n is a positive integer, or ASYMPTOTIC for the n -> infinity limit.
    """

    geometry: CavityGeometry
    d: float
    n: float = 1

    def __post_init__(self):
        if not (self.d > 0.0):
            raise ValidationError(f"gap distance d must be > 0 (got {self.d!r})")
        if self.n != ASYMPTOTIC:
            if self.n != int(self.n) or self.n < 1:
                raise ValidationError(
                    f"n must be a positive integer or ASYMPTOTIC (got {self.n!r})")

    @property
    def is_asymptotic(self) -> bool:
        return self.n == ASYMPTOTIC


@dataclass(frozen=True)
class StructureResult:
    """Composed forces of one periodic structure (all in N, Q in N/m)."""

    total_force: float
    effectiveness: float
    per_cavity_force: float  # F(a)
    gap_force: float  # F(d)


def _wing_force_pair(structure: PeriodicStructure, constants, settings):
    """F(a) and F(d), each computed exactly once."""
    geom = structure.geometry
    f_a = wing_force(geom, constants, settings)
    f_d = wing_force_at_separation(geom, structure.d, constants, settings)
    return f_a, f_d


def _period_length(structure: PeriodicStructure) -> float:
    geom = structure.geometry
    return geom.a + 2.0 * geom.R * math.tan(geom.phi)


def total_force(structure: PeriodicStructure,
                constants: PhysicalConstants = PhysicalConstants(),
                settings: QuadratureSettings = QuadratureSettings(),
                ) -> StructureResult:
    """Total force and effectiveness of a finite periodic structure."""
    if structure.is_asymptotic:
        raise ValidationError("total_force requires a finite cavity count; "
                              "use asymptotic_effectiveness for n -> infinity")
    n = int(structure.n)
    f_a, f_d = _wing_force_pair(structure, constants, settings)
    # affine form of n F(a) - (n-1) F(d): exact cancellation at d = a
    f_total = n * (f_a.force - f_d.force) + f_d.force
    denom = n * _period_length(structure) + (n - 1) * structure.d
    if denom <= 0.0:
        raise ValidationError("structure length must be > 0; inputs are corrupt")
    return StructureResult(total_force=f_total,
                           effectiveness=f_total / denom,
                           per_cavity_force=f_a.force,
                           gap_force=f_d.force)


def effectiveness(structure: PeriodicStructure,
                  constants: PhysicalConstants = PhysicalConstants(),
                  settings: QuadratureSettings = QuadratureSettings()) -> float:
    """Expulsion effectiveness Q (N/m) of a finite structure."""
    return total_force(structure, constants, settings).effectiveness


def asymptotic_effectiveness(structure: PeriodicStructure,
                             constants: PhysicalConstants = PhysicalConstants(),
                             settings: QuadratureSettings = QuadratureSettings(),
                             ) -> float:
    """Exact n -> infinity limit of Q (N/m).

    Q is a ratio of two functions affine in n, so the limit is the ratio
    of their slopes; no large-n extrapolation involved.
    """
    f_a, f_d = _wing_force_pair(structure, constants, settings)
    denom = _period_length(structure) + structure.d
    if denom <= 0.0:
        raise ValidationError("period length must be > 0; inputs are corrupt")
    return (f_a.force - f_d.force) / denom
