"""Casimir expulsion forces of open trapezoid nano-cavities.

Evaluates the single-cavity expulsion force, composes periodic
structures with inter-cavity gaps, and locates the (opening angle,
gap ratio) combinations maximizing expulsion effectiveness per unit
structure length.
"""

from .constants import C_CODATA, HBAR_CODATA, PhysicalConstants
from .errors import (CavityModelError, ConvergenceError, DomainError,
                     SingularityError, ValidationError)
from .geometry import (AnglePair, CavityGeometry, angular_integral,
                       effective_separation, limit_angle_lower,
                       limit_angle_upper, limit_angles, local_pressure,
                       pressure_integrand)
from .optimize import (EffectivenessEvaluator, OptimizationResult, QSurface,
                       maximize_q, q_surface)
from .periodic import (ASYMPTOTIC, PeriodicStructure, StructureResult,
                       asymptotic_effectiveness, effectiveness, total_force)
from .quadrature import QuadratureSettings, adaptive_quadrature
from .sweeps import SweepPoint, SweepSpec, run_sweep
from .wing_force import ForceResult, wing_force, wing_force_at_separation

__version__ = "0.1.0"

__all__ = [
    "ASYMPTOTIC", "AnglePair", "C_CODATA", "CavityGeometry",
    "CavityModelError", "ConvergenceError", "DomainError",
    "EffectivenessEvaluator", "ForceResult", "HBAR_CODATA",
    "OptimizationResult", "PeriodicStructure", "PhysicalConstants",
    "QSurface", "QuadratureSettings", "SingularityError", "StructureResult",
    "SweepPoint", "SweepSpec", "ValidationError", "adaptive_quadrature",
    "angular_integral", "asymptotic_effectiveness", "effective_separation",
    "effectiveness", "limit_angle_lower", "limit_angle_upper", "limit_angles",
    "local_pressure", "maximize_q", "pressure_integrand", "q_surface",
    "run_sweep", "total_force", "wing_force", "wing_force_at_separation",
]
