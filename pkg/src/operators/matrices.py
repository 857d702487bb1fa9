"""
Dense truncations of the sector operators M_k = A + B Delta^{-1} restricted to V_k.

Multiplication by a polynomial in x3 is evaluated on a padded tridiagonal ladder
and then truncated, so the block edge carries the exact infinite-operator entries.
"""
import logging
from typing import Sequence, Union

import numpy as np
from numpy.polynomial import Polynomial
from scipy.sparse import diags, identity

from src.basis.legendre import eigen_degree, ladder_coefficients, sector_basis_spec
from src.models import ModelVariant, SectorOperator
from src.operators.models import ZonalModel

logger = logging.getLogger("ZonalStab.Operators")

PolyLike = Union[Polynomial, Sequence[float], np.ndarray]


def _coefficients(poly: PolyLike) -> np.ndarray:
    if isinstance(poly, Polynomial):
        coeffs = poly.coef
    else:
        coeffs = np.atleast_1d(np.asarray(poly, dtype=float))
    coeffs = np.trim_zeros(coeffs, trim="b")
    return coeffs if len(coeffs) else np.zeros(1)


def ladder_matrix(k: int, size: int):
    """Sparse x3 ladder on V_k for degrees k .. k + size - 1."""
    ladder = ladder_coefficients(k, k + size - 1)
    off = np.array([ladder.a(ell) for ell in range(k + 1, k + size)])
    return diags([off, off], [-1, 1], shape=(size, size), format="csr")


def mult_matrix(k: int, poly: PolyLike, L: int) -> np.ndarray:
    """Leading L x L block of poly(X) computed on the (L + d)-sized ladder."""
    if L < 1:
        raise ValueError(f"matrix size L must be >= 1, got {L}")
    coeffs = _coefficients(poly)
    d = len(coeffs) - 1
    size = L + d
    X = ladder_matrix(k, size)
    eye = identity(size, format="csr")

    # Horner in the ladder
    result = coeffs[-1] * eye
    for c in coeffs[-2::-1]:
        result = result @ X + c * eye
    return result.toarray()[:L, :L]


def sector_operator(model: ZonalModel, k: int, N: int) -> SectorOperator:
    """
    M = mult(A) - mult(B) diag(1/lambda_l); the Delta^{-1} factor scales columns.
    For the Legendre flows this is mult(A) (1 - lambda_nu/lambda_l) - Omega/lambda_l.
    """
    if k == 0:
        raise ValueError("sector k = 0 has Gamma_0 = 0; choose k >= 1")
    if k < 0:
        raise ValueError(f"sector k must be >= 1, got {k}")
    if N < 1:
        raise ValueError(f"truncation N must be >= 1, got {N}")

    spec = sector_basis_spec(k, N)
    ells = spec.ells.astype(float)
    inv_lambda = 1.0 / (ells * (ells + 1.0))

    a_part = mult_matrix(k, model.A, N)
    if model.variant is ModelVariant.LEGENDRE:
        # factored form keeps the l = nu column exactly -Omega/lambda_nu
        lam_nu = float(eigen_degree(model.nu))
        entries = a_part * (1.0 - lam_nu / (ells * (ells + 1.0)))[None, :] - np.diag(model.omega * inv_lambda)
    else:
        b_part = mult_matrix(k, model.B, N)
        entries = a_part - b_part * inv_lambda[None, :]

    logger.debug(f"Built {model.label} sector operator k={k}, N={N}, Omega={model.omega:g}")
    return SectorOperator(k=k, N=N, entries=entries, spec=spec, model=model)


def export_matrix(op: SectorOperator, path: str):
    """Row-major plain text, one row per line, 17 significant digits."""
    np.savetxt(path, op.entries, fmt="%.17g", delimiter=" ")
    logger.info(f"Wrote {op.N}x{op.N} sector operator (k={op.k}) to {path}")


def load_matrix(path: str) -> np.ndarray:
    return np.atleast_2d(np.loadtxt(path, dtype=float))
