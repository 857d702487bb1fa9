"""
Operators - Data Models
Zonal base flows and the reports produced by the stability criteria.
"""
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from numpy.polynomial import Polynomial

from src.geometry.models import ZonalGeometry
from src.models import ModelVariant, frozen_array


@dataclass(frozen=True)
class ZonalModel:
    """
    Zonal stream function f(x3) with rotation Omega. A = f' and B = Omega - w'
    where w = Delta f; polynomial coefficients are stored in ascending order.
    """
    variant: ModelVariant
    omega: float
    f_coeffs: np.ndarray
    a_coeffs: np.ndarray
    wprime_coeffs: np.ndarray
    nu: Optional[int] = None
    alpha: float = 1.0
    geometry: Optional[ZonalGeometry] = None   # None means the unit sphere

    def __post_init__(self):
        for name in ("f_coeffs", "a_coeffs", "wprime_coeffs"):
            object.__setattr__(self, name, frozen_array(getattr(self, name)))

    @property
    def label(self) -> str:
        if self.variant is ModelVariant.LEGENDRE:
            return f"p{self.nu}"
        return f"general(deg {len(self.f_coeffs) - 1})"

    @property
    def A(self) -> Polynomial:
        return Polynomial(self.a_coeffs)

    @property
    def w_prime(self) -> Polynomial:
        return Polynomial(self.wprime_coeffs)

    @property
    def B(self) -> Polynomial:
        return Polynomial([self.omega]) - self.w_prime

    @property
    def degree(self) -> int:
        """Degree of A, which bounds the bandwidth of the sector matrices."""
        return max(len(self.A.trim().coef) - 1, len(self.B.trim().coef) - 1, 0)

    def with_omega(self, omega: float) -> "ZonalModel":
        return replace(self, omega=float(omega))

    def with_geometry(self, geometry: Optional[ZonalGeometry]) -> "ZonalModel":
        return replace(self, geometry=geometry)


@dataclass(frozen=True)
class GuardCertificate:
    clause: str      # 'no_sign_change' | 'degree_bound'
    detail: str


@dataclass
class CriterionReport:
    rayleigh: bool
    fjortoft: bool
    arnold_stable: bool
    witnesses: dict = field(default_factory=dict)
    guard: Optional[GuardCertificate] = None

    def as_dict(self) -> dict:
        return {
            "rayleigh": self.rayleigh,
            "fjortoft": self.fjortoft,
            "arnold_stable": self.arnold_stable,
            "guard": self.guard.clause if self.guard else None,
            "witnesses": self.witnesses,
        }
