import logging
from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from src.errors import EigenSolverError
from src.models import SpectrumResult

logger = logging.getLogger("ZonalStab.Spectra")

TAU_REL = 1e-8
PAIR_TOL = 1e-9
RESIDUAL_TOL = 1e-8


def real_cutoff(matrix_norm: float, tau_rel: float = TAU_REL) -> float:
    """tau_real = tau_rel * ||M||_F; smaller imaginary parts count as real."""
    return tau_rel * matrix_norm


def _pairing_mismatch(eigenvalues: np.ndarray) -> float:
    a = np.sort_complex(eigenvalues)
    b = np.sort_complex(np.conj(eigenvalues))
    return float(np.max(np.abs(a - b))) if len(a) else 0.0


def _values_only(M: np.ndarray, norm: float) -> Optional[SpectrumResult]:
    """Eigenvalues without vectors, for the error report when the full solve fails."""
    try:
        return SpectrumResult(eigenvalues=scipy.linalg.eigvals(M, check_finite=False), matrix_norm=norm)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError):
        return None


def eig(matrix, compute_residual: bool = True) -> SpectrumResult:
    """
    All eigenvalues of a dense real matrix (LAPACK Hessenberg reduction and
    shifted QR). With compute_residual the bound max ||Mv - lambda v|| / ||M||
    over unit eigenvectors is recorded and must not exceed RESIDUAL_TOL.
    """
    M = np.asarray(matrix, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise ValueError(f"eig needs a non-empty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")

    norm = float(np.linalg.norm(M, "fro"))
    try:
        if compute_residual:
            values, vectors = scipy.linalg.eig(M, check_finite=False)
        else:
            values = scipy.linalg.eigvals(M, check_finite=False)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise EigenSolverError(
            f"QR iteration failed on {M.shape[0]}x{M.shape[0]} matrix: {e}",
            partial=_values_only(M, norm) if compute_residual else None,
        ) from e

    residual = None
    if compute_residual:
        vectors = vectors / np.linalg.norm(vectors, axis=0)[None, :]
        resid = np.linalg.norm(M @ vectors - vectors * values[None, :], axis=0)
        residual = float(np.max(resid) / norm) if norm > 0 else float(np.max(resid))
        if not residual <= RESIDUAL_TOL:
            raise EigenSolverError(
                f"eigenpair residual {residual:.3e} exceeds {RESIDUAL_TOL:g}",
                partial=SpectrumResult(eigenvalues=values, matrix_norm=norm, residual_bound=residual),
            )

    mismatch = _pairing_mismatch(values)
    if mismatch > PAIR_TOL * max(1.0, norm):
        logger.warning(f"Eigenvalues not conjugate-paired: mismatch {mismatch:.3e} (||M||={norm:.3e})")

    return SpectrumResult(eigenvalues=values, matrix_norm=norm, residual_bound=residual)


def max_imag(result: SpectrumResult, tau: float) -> Tuple[float, int]:
    """(max(0, max Im lambda), number of eigenvalues with Im lambda > tau)."""
    if tau < 0:
        raise ValueError(f"threshold tau must be >= 0, got {tau}")
    imag = np.imag(result.eigenvalues)
    top = float(max(0.0, np.max(imag))) if len(imag) else 0.0
    return top, int(np.sum(imag > tau))
