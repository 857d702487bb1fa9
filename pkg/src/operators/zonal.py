"""
Zonal base flows on the sphere: the Legendre eigen-flows f ~ P_nu(x3) and
general polynomial stream functions.
"""
import logging
from typing import Optional, Sequence

import numpy as np
from numpy.polynomial import Legendre, Polynomial

from src.basis.legendre import eigen_degree
from src.geometry.models import ZonalGeometry
from src.models import ModelVariant
from src.operators.models import ZonalModel

logger = logging.getLogger("ZonalStab.Operators")

_ONE_MINUS_X2 = Polynomial([1.0, 0.0, -1.0])


def zonal_laplacian(f: Polynomial) -> Polynomial:
    """Delta f = ((1 - x^2) f')' for a zonal function on the unit sphere."""
    return (_ONE_MINUS_X2 * f.deriv()).deriv()


def monic_legendre_derivative(nu: int) -> Polynomial:
    """P_nu' scaled to leading coefficient 1: x, x^2 - 1/5, x^3 - 3x/7, ..."""
    if nu < 1:
        raise ValueError(f"Legendre degree nu must be >= 1, got {nu}")
    dp = Legendre.basis(nu).deriv().convert(kind=Polynomial)
    return dp / dp.coef[-1]


def legendre_model(nu: int, alpha: float = 1.0, omega: float = 0.0,
                   geometry: Optional[ZonalGeometry] = None) -> ZonalModel:
    """
    A = alpha * monic P_nu', f its antiderivative (a multiple of P_nu), so that
    w = -lambda_nu f and B = Omega + lambda_nu A.
    """
    A = alpha * monic_legendre_derivative(nu)
    p = Legendre.basis(nu).convert(kind=Polynomial)
    f = alpha * p / p.deriv().coef[-1]
    lam = eigen_degree(nu)
    w_prime = -lam * A
    return ZonalModel(
        variant=ModelVariant.LEGENDRE,
        omega=float(omega),
        f_coeffs=f.coef,
        a_coeffs=A.coef,
        wprime_coeffs=w_prime.coef,
        nu=nu,
        alpha=float(alpha),
        geometry=geometry,
    )


def general_zonal(f_coeffs: Sequence[float], omega: float = 0.0,
                  geometry: Optional[ZonalGeometry] = None) -> ZonalModel:
    """Polynomial stream function f(x3), coefficients ascending."""
    coeffs = np.asarray(f_coeffs, dtype=float)
    if coeffs.ndim != 1 or len(coeffs) == 0:
        raise ValueError("f_coeffs must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(coeffs)):
        raise ValueError("f_coeffs must be finite")
    f = Polynomial(coeffs)
    A = f.deriv()
    w_prime = zonal_laplacian(f).deriv()
    return ZonalModel(
        variant=ModelVariant.GENERAL,
        omega=float(omega),
        f_coeffs=f.coef,
        a_coeffs=A.coef if len(A.coef) else np.zeros(1),
        wprime_coeffs=w_prime.coef if len(w_prime.coef) else np.zeros(1),
        geometry=geometry,
    )


def model_from_name(name: str, alpha: float = 1.0, omega: float = 0.0) -> ZonalModel:
    """'p2', 'p3', 'p4', ... as used on the command line."""
    key = name.strip().lower()
    if not key.startswith("p") or not key[1:].isdigit():
        raise ValueError(f"unknown model '{name}'; expected p<nu> such as p3")
    return legendre_model(int(key[1:]), alpha=alpha, omega=omega)
