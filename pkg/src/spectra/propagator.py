"""
Growth of the linearized propagator exp(tM) v0, used to expose weak
(polynomial) instability from Jordan blocks at real eigenvalues.
"""
import logging
from typing import Sequence, Union

import numpy as np
from scipy.linalg import expm

from src.errors import PropagatorOverflowError
from src.models import SectorOperator

logger = logging.getLogger("ZonalStab.Spectra")


def basis_vector(N: int, index: int) -> np.ndarray:
    if not 0 <= index < N:
        raise ValueError(f"basis index {index} outside 0..{N - 1}")
    v = np.zeros(N)
    v[index] = 1.0
    return v


def sector_generator(op: SectorOperator) -> np.ndarray:
    """Gamma_k = i k M_k, the generator of the physical linearized group on V_k."""
    return 1j * op.k * op.entries


def propagator_growth(matrix, v0: Union[int, Sequence[float], np.ndarray], t_list: Sequence[float]) -> np.ndarray:
    """||exp(tM) v0|| for each t via scaling-and-squaring Pade (scipy.linalg.expm)."""
    M = np.asarray(matrix)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"propagator needs a square matrix, got shape {M.shape}")
    if isinstance(v0, (int, np.integer)):
        v0 = basis_vector(M.shape[0], int(v0))
    v0 = np.asarray(v0)
    if v0.shape != (M.shape[0],):
        raise ValueError(f"initial vector shape {v0.shape} does not match matrix size {M.shape[0]}")

    times = np.asarray(t_list, dtype=float)
    if np.any(times < 0):
        raise ValueError("times must be >= 0")
    if np.any(np.diff(times) < 0):
        raise ValueError("times must be ascending")

    norms = np.empty(len(times))
    for i, t in enumerate(times):
        with np.errstate(over="ignore", invalid="ignore"):
            action = expm(t * M) @ v0
        if not np.all(np.isfinite(action)):
            raise PropagatorOverflowError(f"exp(tM) v0 overflowed at t={t:g}")
        norms[i] = np.linalg.norm(action)
    logger.debug(f"Propagator norms at {len(times)} times, final {norms[-1] if len(norms) else float('nan'):.6g}")
    return norms
