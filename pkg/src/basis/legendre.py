"""
Normalized associated Legendre functions on an azimuthal sector V_k and the
ladder algebra of multiplication by x3.

Sign convention: zeta_l(x) > 0 as x -> 1- (no Condon-Shortley phase). Profiles
are normalized on [-1, 1]; the sector function is exp(ik psi)/sqrt(2 pi) times
the profile, which has unit L2 norm on the sphere.
"""
import logging
from typing import Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import gammaln

from src.models import LadderCoefficients, QuadratureRule, SectorBasisSpec

logger = logging.getLogger("ZonalStab.Basis")


def _ladder_values(m: int, ells: np.ndarray) -> np.ndarray:
    ells = np.asarray(ells, dtype=float)
    out = np.zeros_like(ells)
    inside = ells > m
    num = (ells[inside] + m) * (ells[inside] - m)
    den = (2.0 * ells[inside] + 1.0) * (2.0 * ells[inside] - 1.0)
    out[inside] = np.sqrt(num / den)
    return out


def ladder_coefficients(k: int, L: int) -> LadderCoefficients:
    """a_l = sqrt((l+k)(l-k) / ((2l+1)(2l-1))) for l = k..L."""
    if k < 1:
        raise ValueError(f"azimuthal order k must be >= 1, got {k}")
    if L < k:
        raise ValueError(f"maximum degree L={L} is below k={k}")
    ells = np.arange(k, L + 1)
    return LadderCoefficients(k=k, ell_max=L, values=_ladder_values(k, ells))


def eigen_degree(ell) -> int:
    """lambda_l = l(l+1), the eigenvalue of -Delta on degree l."""
    if np.any(np.asarray(ell) < 0):
        raise ValueError(f"degree must be >= 0, got {ell}")
    return ell * (ell + 1)


def gauss_rule(n: int) -> QuadratureRule:
    if n < 1:
        raise ValueError(f"node count must be >= 1, got {n}")
    nodes, weights = leggauss(n)
    return QuadratureRule(nodes=nodes, weights=weights)


def sector_norms(k: int, ells: np.ndarray) -> np.ndarray:
    """n_l with n_l^2 * integral of P^k_l(t)^2 over [-1, 1] equal to 1."""
    ells = np.asarray(ells, dtype=float)
    log_ratio = gammaln(ells - k + 1.0) - gammaln(ells + k + 1.0)
    return np.sqrt((2.0 * ells + 1.0) / 2.0 * np.exp(log_ratio))


def sector_basis_spec(k: int, N: int) -> SectorBasisSpec:
    if k < 1:
        raise ValueError(f"sector order k must be >= 1, got {k}")
    if N < 1:
        raise ValueError(f"truncation size N must be >= 1, got {N}")
    ell_min = max(k, 1)
    ells = np.arange(ell_min, ell_min + N)
    return SectorBasisSpec(k=k, ell_min=ell_min, N=N, norms=sector_norms(k, ells))


def seed_constant(m: int) -> float:
    c = np.sqrt(0.5)
    for j in range(1, m + 1):
        c *= np.sqrt((2.0 * j + 1.0) / (2.0 * j))
    return c


def normalized_legendre(m: int, ell_max: int, x, derivative: bool = False):
    """
    Orthonormal profiles Theta^m_l(x) for l = m..ell_max via the upward recurrence
    x Theta_l = a_l Theta_{l-1} + a_{l+1} Theta_{l+1}, seeded at l = m.

    Returns an array of shape (len(x), ell_max - m + 1), plus the x-derivatives
    when derivative=True (interior abscissas only).
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(np.abs(x) > 1.0):
        raise ValueError("abscissas must satisfy |x| <= 1")
    if m < 0 or ell_max < m:
        raise ValueError(f"need 0 <= m <= ell_max, got m={m}, ell_max={ell_max}")

    ells = np.arange(m, ell_max + 2)
    a = _ladder_values(m, ells)
    s2 = 1.0 - x * x
    count = ell_max - m + 1
    theta = np.zeros((len(x), count))
    theta[:, 0] = seed_constant(m) * np.sqrt(s2) ** m
    if count > 1:
        theta[:, 1] = x * theta[:, 0] / a[1]
    for j in range(1, count - 1):
        theta[:, j + 1] = (x * theta[:, j] - a[j] * theta[:, j - 1]) / a[j + 1]

    if not derivative:
        return theta

    if np.any(s2 <= 0.0):
        raise ValueError("derivatives are only evaluated at interior abscissas")
    dtheta = np.zeros_like(theta)
    for j in range(count):
        ell = m + j
        lower = theta[:, j - 1] if j > 0 else 0.0
        dtheta[:, j] = (-ell * x * theta[:, j] + (2 * ell + 1) * a[j] * lower) / s2
    return theta, dtheta


def evaluate_sector_basis(spec: SectorBasisSpec, x) -> np.ndarray:
    """Matrix of zeta_l(x_i); column j holds degree spec.ell_min + j."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(np.abs(x) > 1.0):
        raise ValueError("abscissas must satisfy |x| <= 1")
    ell_top = spec.ell_min + spec.N - 1
    full = normalized_legendre(spec.k, ell_top, x)
    return full[:, spec.ell_min - spec.k:]


def gram_matrix(spec: SectorBasisSpec, rule: QuadratureRule = None) -> np.ndarray:
    if rule is None:
        rule = gauss_rule(spec.ell_min + spec.N + spec.k + 2)
    values = evaluate_sector_basis(spec, rule.nodes)
    return values.T @ (values * rule.weights[:, None])


def ladder_residual(spec: SectorBasisSpec, x) -> Tuple[np.ndarray, np.ndarray]:
    """
    Residuals of the x3 ladder and squared ladder on the interior degrees
    (the last one or two degrees need neighbours outside the truncation).
    """
    wide = sector_basis_spec(spec.k, spec.N + 2)
    zeta = evaluate_sector_basis(wide, x)
    ells = wide.ells
    a = _ladder_values(spec.k, np.arange(0, ells[-1] + 3))
    x = np.atleast_1d(np.asarray(x, dtype=float))[:, None]

    def col(j):
        return zeta[:, j] if 0 <= j < zeta.shape[1] else 0.0

    first = np.zeros((zeta.shape[0], spec.N))
    second = np.zeros((zeta.shape[0], spec.N))
    for j in range(spec.N):
        ell = ells[j]
        first[:, j] = x[:, 0] * zeta[:, j] - (a[ell] * col(j - 1) + a[ell + 1] * col(j + 1))
        b_ell = a[ell] * a[ell - 1] if ell >= 1 else 0.0
        b_up = a[ell + 2] * a[ell + 1]
        c_ell = a[ell] ** 2 + a[ell + 1] ** 2
        second[:, j] = x[:, 0] ** 2 * zeta[:, j] - (b_ell * col(j - 2) + c_ell * zeta[:, j] + b_up * col(j + 2))
    return first, second
