"""One-dimensional parameter sweeps of force and effectiveness curves."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .constants import PhysicalConstants
from .errors import CavityModelError, ValidationError
from .geometry import CavityGeometry
from .periodic import ASYMPTOTIC, PeriodicStructure
from .quadrature import QuadratureSettings
from .wing_force import wing_force

SWEEP_VARIABLES = ("d_over_a", "phi", "R")
OBSERVABLES = ("abs_total_force", "effectiveness")


@dataclass(frozen=True)
class SweepSpec:
    """A uniform sweep of one parameter with all others held fixed.

    variable: which parameter runs ("d_over_a", "phi" in rad, or "R" in m)
    start, stop, steps: uniform grid over [start, stop], steps >= 2
    observable: "abs_total_force" (|F_total|, N) or "effectiveness" (Q, N/m)
    a, R_over_a, L, phi, d_over_a, n: the fixed parameter set; the entry
        matching `variable` is ignored
    """

    variable: str
    start: float
    stop: float
    steps: int
    observable: str
    a: float
    R_over_a: float = 2.5
    L: float = 1.0
    phi: float = 0.0
    d_over_a: float = 1.5
    n: float = 1
    settings: QuadratureSettings = field(default_factory=QuadratureSettings)

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ValidationError(f"unknown sweep variable {self.variable!r}")
        if self.observable not in OBSERVABLES:
            raise ValidationError(f"unknown observable {self.observable!r}")
        if not (self.start < self.stop):
            raise ValidationError("sweep range must satisfy start < stop")
        if self.steps < 2:
            raise ValidationError(f"steps must be >= 2 (got {self.steps!r})")
        if self.n == ASYMPTOTIC and self.observable == "abs_total_force":
            raise ValidationError(
                "abs_total_force is unbounded at asymptotic n; "
                "sweep effectiveness instead")
        # every point of the range must satisfy the geometry invariants
        for value in (self.start, self.stop):
            self.structure_at(value)

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)

    def structure_at(self, value: float) -> PeriodicStructure:
        """The periodic structure at one sweep value."""
        phi = value if self.variable == "phi" else self.phi
        R = value if self.variable == "R" else self.R_over_a * self.a
        d_over_a = value if self.variable == "d_over_a" else self.d_over_a
        geom = CavityGeometry(a=self.a, R=R, L=self.L, phi=phi)
        return PeriodicStructure(geometry=geom, d=d_over_a * self.a, n=self.n)


@dataclass(frozen=True)
class SweepPoint:
    """One sweep row; observable is NaN when error is set."""

    value: float
    observable: float
    error: str | None = None


def run_sweep(spec: SweepSpec,
              constants: PhysicalConstants = PhysicalConstants(),
              ) -> list[SweepPoint]:
    """Evaluate the observable at each sweep value, in ascending order.

    Per-point model failures become error rows; the sweep continues.
    Wing forces that do not depend on the running variable are computed
    once and reused across rows.
    """
    cache: dict = {}
    points = []
    for value in spec.values():
        try:
            structure = spec.structure_at(value)
            points.append(SweepPoint(float(value),
                                     _observe(spec, structure, constants, cache)))
        except CavityModelError as exc:
            points.append(SweepPoint(float(value), float("nan"), str(exc)))
    return points


def _observe(spec: SweepSpec, structure: PeriodicStructure,
             constants: PhysicalConstants, cache: dict) -> float:
    def cached_force(separation: float, geom: CavityGeometry) -> float:
        key = (separation, geom.R, geom.L, geom.phi)
        if key not in cache:
            cache[key] = wing_force(replace(geom, a=separation),
                                    constants, spec.settings).force
        return cache[key]

    geom = structure.geometry
    f_a = cached_force(geom.a, geom)
    f_d = cached_force(structure.d, geom)
    period = geom.a + 2.0 * geom.R * math.tan(geom.phi)
    if structure.is_asymptotic:
        return (f_a - f_d) / (period + structure.d)
    n = int(structure.n)
    f_total = n * (f_a - f_d) + f_d  # exact cancellation at d = a
    if spec.observable == "abs_total_force":
        return abs(f_total)
    return f_total / (n * period + (n - 1) * structure.d)
