"""Physical constants entering the vacuum pressure kernel.

Only two dimensional quantities appear anywhere in the model: the
reduced Planck constant and the speed of light. Defaults are the CODATA
values; both can be overridden for unit-system experiments.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError

HBAR_CODATA = 1.054571817e-34  # reduced Planck constant (J s)
C_CODATA = 299792458.0  # speed of light in vacuum (m/s), exact


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = HBAR_CODATA  # J s
    c: float = C_CODATA  # m/s

    def __post_init__(self):
        if not (self.hbar > 0.0):
            raise ValidationError(f"hbar must be > 0 (got {self.hbar!r})")
        if not (self.c > 0.0):
            raise ValidationError(f"c must be > 0 (got {self.c!r})")
