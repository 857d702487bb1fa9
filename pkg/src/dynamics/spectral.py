"""
Spectral operators on triangular-truncated fields: Laplacian, Poisson bracket,
zonal projection, diagnostics and the weighted norms used for decay estimates.
"""
import logging
import math
from functools import lru_cache
from typing import Optional

import numpy as np

from src.basis.transforms import SphericalTransform
from src.errors import TransformError
from src.models import SpectralField

logger = logging.getLogger("ZonalStab.Dynamics")

X3_COEFF = math.sqrt(4.0 * math.pi / 3.0)   # x3 = X3_COEFF * Y_1^0
MEAN_TOL = 1e-12


@lru_cache(maxsize=8)
def get_transform(L: int, nlat: Optional[int] = None, nlon: Optional[int] = None) -> SphericalTransform:
    return SphericalTransform(L, nlat, nlon)


def _lambdas(L: int) -> np.ndarray:
    ell = np.arange(L + 1, dtype=float)
    return ell * (ell + 1.0)


def laplacian(field: SpectralField) -> SpectralField:
    return field.replace(field.coeffs * -_lambdas(field.L)[:, None])


def inv_laplacian(field: SpectralField) -> SpectralField:
    """Delta^{-1} on mean-zero fields; the result has zero mean."""
    c00 = field.coeff(0, 0)
    if abs(c00) > MEAN_TOL * max(1.0, field.norm()):
        raise ValueError(f"inv_laplacian needs a mean-zero field, c[0,0] = {c00:.3e}")
    lam = _lambdas(field.L)
    lam[0] = 1.0
    coeffs = field.coeffs / -lam[:, None]
    coeffs[0, :] = 0.0
    return field.replace(coeffs)


def jacobian(f: SpectralField, g: SpectralField, transform: Optional[SphericalTransform] = None) -> SpectralField:
    """<J grad f, grad g> = f_psi g_x - f_x g_psi, dealiased by the 3L grid."""
    if f.L != g.L:
        raise TransformError(f"truncation mismatch: L={f.L} and L={g.L}")
    transform = transform or get_transform(f.L)
    real = f.is_real() and g.is_real()
    f_psi, f_x = transform.gradient(f, real=real)
    g_psi, g_x = transform.gradient(g, real=real)
    return transform.analyze(f_psi * g_x - f_x * g_psi)


def chi_field(L: int) -> SpectralField:
    """Coriolis factor chi = x3 on the unit sphere."""
    return SpectralField.from_modes(L, {(1, 0): X3_COEFF})


def zonal_project(field: SpectralField) -> SpectralField:
    """Orthogonal projection onto the m = 0 columns."""
    coeffs = np.zeros_like(field.coeffs)
    coeffs[:, field.L] = field.coeffs[:, field.L]
    return field.replace(coeffs)


def weak_norm(field: SpectralField, s: float = 3.0) -> float:
    """sqrt(sum (1 + lambda_l)^-s |c_lm|^2), an H^-s proxy."""
    if s < 0:
        raise ValueError(f"order s must be >= 0, got {s}")
    weights = (1.0 + _lambdas(field.L)) ** (-s)
    return float(np.sqrt(np.sum(weights[:, None] * np.abs(field.coeffs) ** 2)))


def energy(w: SpectralField) -> float:
    """||grad f||^2 = sum lambda_l |f_lm|^2 with f = Delta^{-1} w."""
    lam = _lambdas(w.L)
    lam[0] = np.inf
    return float(np.sum(np.abs(w.coeffs) ** 2 / lam[:, None]))


def xi_moment(w: SpectralField) -> float:
    """Integral of xi w over the sphere, xi = x3."""
    return float(X3_COEFF * np.real(w.coeff(1, 0)))


def casimir2(w: SpectralField, omega: float) -> float:
    q = w - omega * chi_field(w.L)
    return float(np.sum(np.abs(q.coeffs) ** 2))


def sup_q(w: SpectralField, omega: float, transform: Optional[SphericalTransform] = None) -> float:
    transform = transform or get_transform(w.L)
    q = w - omega * chi_field(w.L)
    return float(np.max(np.abs(transform.synthesize(q))))
