"""Maximization of expulsion effectiveness over (phi, d/a).

Two stages: a coarse rectangular grid over the search box, then a
compass pattern search with shrinking steps started from the best grid
cell. Q is smooth and cheap, so this is both robust and fast, and the
grid doubles as the effectiveness-surface export.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .constants import PhysicalConstants
from .errors import CavityModelError, ValidationError
from .geometry import CavityGeometry
from .periodic import ASYMPTOTIC
from .quadrature import QuadratureSettings
from .wing_force import wing_force

# Default search box: phi in [0.01, 20] deg, d/a in [1.01, 3].
DEFAULT_BOX = ((math.radians(0.01), math.radians(20.0)), (1.01, 3.0))
DEFAULT_GRID = (64, 64)

# Refinement stops when both steps fall below these.
PHI_STEP_TOL = math.radians(1e-3)
D_OVER_A_STEP_TOL = 1e-4

# Quadrature tolerance floor during refinement, so optimizer steps are
# not limited by integration noise.
REFINE_REL_TOL = 1e-10


@dataclass(frozen=True)
class OptimizationResult:
    """Refined effectiveness maximizer over the search box."""

    phi_star: float  # rad
    d_over_a_star: float
    q_star: float  # N/m
    grid_resolution: tuple[int, int]
    refinement_iterations: int
    trace: list[tuple[float, float, float]]  # (phi, d/a, Q) samples
    boundary_warning: bool  # maximizer pinned to the box boundary


@dataclass(frozen=True)
class QSurface:
    """Dense effectiveness grid for surface plots.

    q[i, j] is the effectiveness at (phi_values[i], d_over_a_values[j]).
    Rows that failed to evaluate hold NaN, with messages in errors.
    """

    phi_values: np.ndarray
    d_over_a_values: np.ndarray
    q: np.ndarray
    errors: list[tuple[int, int, str]]

    def argmax(self) -> tuple[int, int]:
        flat = np.nanargmax(self.q)
        return np.unravel_index(flat, self.q.shape)


class EffectivenessEvaluator:
    """Cached Q(phi, d/a) for one (a, R/a, L, n) instance.

    Wing forces are memoized by (separation, phi): a whole grid column
    at fixed phi shares one F(a) evaluation, and refinement revisits
    points for free.
    """

    def __init__(self, a: float, R_over_a: float, n,
                 L: float = 1.0,
                 constants: PhysicalConstants = PhysicalConstants(),
                 settings: QuadratureSettings = QuadratureSettings()):
        if not (a > 0.0 and R_over_a > 0.0):
            raise ValidationError("a and R_over_a must be > 0")
        if n != ASYMPTOTIC and (n != int(n) or n < 1):
            raise ValidationError(
                f"n must be a positive integer or ASYMPTOTIC (got {n!r})")
        self.a = a
        self.R = R_over_a * a
        self.L = L
        self.n = n
        self.constants = constants
        self.settings = settings
        self._forces: dict[tuple[float, float], float] = {}

    def _force(self, separation: float, phi: float) -> float:
        key = (separation, phi)
        if key not in self._forces:
            geom = CavityGeometry(a=separation, R=self.R, L=self.L, phi=phi)
            self._forces[key] = wing_force(geom, self.constants,
                                           self.settings).force
        return self._forces[key]

    def q(self, phi: float, d_over_a: float) -> float:
        f_a = self._force(self.a, phi)
        f_d = self._force(d_over_a * self.a, phi)
        period = self.a + 2.0 * self.R * math.tan(phi)
        d = d_over_a * self.a
        if self.n == ASYMPTOTIC:
            return (f_a - f_d) / (period + d)
        n = int(self.n)
        f_total = n * (f_a - f_d) + f_d  # exact cancellation at d = a
        return f_total / (n * period + (n - 1) * d)


def _validate_box(box) -> tuple[tuple[float, float], tuple[float, float]]:
    (phi_lo, phi_hi), (doa_lo, doa_hi) = box
    if not (0.0 <= phi_lo < phi_hi):
        raise ValidationError("phi box must satisfy 0 <= lo < hi")
    if not (doa_lo < doa_hi and doa_lo > 0.0):
        raise ValidationError("d/a box must satisfy 0 < lo < hi")
    return (float(phi_lo), float(phi_hi)), (float(doa_lo), float(doa_hi))


def q_surface(a: float, R_over_a: float, n,
              box=DEFAULT_BOX, resolution: tuple[int, int] = DEFAULT_GRID,
              constants: PhysicalConstants = PhysicalConstants(),
              settings: QuadratureSettings = QuadratureSettings(),
              L: float = 1.0) -> QSurface:
    """Effectiveness on a dense (phi, d/a) grid, row-major in phi."""
    n_phi, n_doa = resolution
    if n_phi < 8 or n_doa < 8:
        raise ValidationError(
            f"surface resolution must be at least 8x8 (got {resolution!r})")
    (phi_lo, phi_hi), (doa_lo, doa_hi) = _validate_box(box)
    phis = np.linspace(phi_lo, phi_hi, n_phi)
    doas = np.linspace(doa_lo, doa_hi, n_doa)
    evaluator = EffectivenessEvaluator(a, R_over_a, n, L, constants, settings)
    q = np.full((n_phi, n_doa), np.nan)
    errors: list[tuple[int, int, str]] = []
    for i, phi in enumerate(phis):
        for j, doa in enumerate(doas):
            try:
                q[i, j] = evaluator.q(float(phi), float(doa))
            except CavityModelError as exc:
                errors.append((i, j, str(exc)))
    return QSurface(phi_values=phis, d_over_a_values=doas, q=q, errors=errors)


def maximize_q(a: float, R_over_a: float, n,
               box=DEFAULT_BOX,
               constants: PhysicalConstants = PhysicalConstants(),
               settings: QuadratureSettings = QuadratureSettings(),
               grid_resolution: tuple[int, int] = DEFAULT_GRID,
               L: float = 1.0,
               phi_step_tol: float = PHI_STEP_TOL,
               d_over_a_step_tol: float = D_OVER_A_STEP_TOL,
               ) -> OptimizationResult:
    """Locate the effectiveness maximum over (phi, d/a) inside the box.

    Coarse grid scan, then compass pattern search with shrinking steps
    until the steps fall below phi_step_tol and d_over_a_step_tol. The
    refinement runs at a tightened quadrature tolerance.
    """
    (phi_lo, phi_hi), (doa_lo, doa_hi) = _validate_box(box)
    n_phi, n_doa = grid_resolution
    if n_phi < 2 or n_doa < 2:
        raise ValidationError("grid resolution must be at least 2x2")

    surface = q_surface(a, R_over_a, n, box, grid_resolution,
                        constants, settings, L)
    if not np.any(np.isfinite(surface.q)):
        raise ValidationError("no grid point evaluated successfully")
    trace = [(float(phi), float(doa), float(surface.q[i, j]))
             for i, phi in enumerate(surface.phi_values)
             for j, doa in enumerate(surface.d_over_a_values)
             if np.isfinite(surface.q[i, j])]
    i0, j0 = surface.argmax()

    refine_settings = replace(settings,
                              rel_tol=min(settings.rel_tol, REFINE_REL_TOL))
    evaluator = EffectivenessEvaluator(a, R_over_a, n, L,
                                       constants, refine_settings)

    phi = float(surface.phi_values[i0])
    doa = float(surface.d_over_a_values[j0])
    best = evaluator.q(phi, doa)
    trace.append((phi, doa, best))
    step_phi = (phi_hi - phi_lo) / (n_phi - 1)
    step_doa = (doa_hi - doa_lo) / (n_doa - 1)
    iterations = 0
    while step_phi >= phi_step_tol or step_doa >= d_over_a_step_tol:
        iterations += 1
        improved = False
        for cand_phi, cand_doa in (
                (min(phi + step_phi, phi_hi), doa),
                (max(phi - step_phi, phi_lo), doa),
                (phi, min(doa + step_doa, doa_hi)),
                (phi, max(doa - step_doa, doa_lo))):
            if (cand_phi, cand_doa) == (phi, doa):
                continue
            q_val = evaluator.q(cand_phi, cand_doa)
            trace.append((cand_phi, cand_doa, q_val))
            if q_val > best:
                phi, doa, best = cand_phi, cand_doa, q_val
                improved = True
        if not improved:
            step_phi *= 0.5
            step_doa *= 0.5

    # guard the refinement-dominance invariant against the (tiny) chance
    # that a coarse-grid sample outranks the refined value through the
    # differing quadrature tolerances
    for t_phi, t_doa, t_q in trace:
        if t_q > best:
            phi, doa, best = t_phi, t_doa, t_q

    on_boundary = (phi <= phi_lo + phi_step_tol or phi >= phi_hi - phi_step_tol
                   or doa <= doa_lo + d_over_a_step_tol
                   or doa >= doa_hi - d_over_a_step_tol)
    return OptimizationResult(phi_star=phi, d_over_a_star=doa, q_star=best,
                              grid_resolution=(n_phi, n_doa),
                              refinement_iterations=iterations,
                              trace=trace, boundary_warning=on_boundary)
