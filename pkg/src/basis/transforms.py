"""
Dense grid <-> spectral transforms for scalars on S^2 in coordinates (psi, x3),
with Gauss latitudes in x3 and equispaced longitudes in psi.

Y_l^m = Theta^|m|_l(x3) exp(i m psi) / sqrt(2 pi) for m >= 0 and
Y_l^-m = (-1)^m conj(Y_l^m). The area element is dpsi dx3.
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np

from src.basis.legendre import gauss_rule, normalized_legendre
from src.errors import TransformError
from src.models import SpectralField

logger = logging.getLogger("ZonalStab.Basis")

_ROOT_2PI = math.sqrt(2.0 * math.pi)


def minimum_grid(L: int) -> Tuple[int, int]:
    """Smallest (nlat, nlon) that integrates triple products of degree-L fields exactly."""
    return math.ceil((3 * L + 2) / 2), 3 * L + 1


class SphericalTransform:
    def __init__(self, L: int, nlat: Optional[int] = None, nlon: Optional[int] = None):
        if L < 1:
            raise ValueError(f"truncation L must be >= 1, got {L}")
        min_lat, min_lon = minimum_grid(L)
        nlat = nlat or min_lat
        nlon = nlon or min_lon
        if nlat < min_lat or nlon < min_lon:
            raise TransformError(
                f"grid {nlat}x{nlon} too small for L={L}; need at least {min_lat}x{min_lon}"
            )
        self.L = L
        self.nlat = nlat
        self.nlon = nlon

        rule = gauss_rule(nlat)
        self.x = np.array(rule.nodes)
        self.weights = np.array(rule.weights)
        self.psi = 2.0 * np.pi * np.arange(nlon) / nlon

        # tables[m, i, l] = Theta^m_l(x_i), zero for l < m
        self._theta = np.zeros((L + 1, nlat, L + 1))
        self._dtheta = np.zeros((L + 1, nlat, L + 1))
        for m in range(L + 1):
            values, derivs = normalized_legendre(m, L, self.x, derivative=True)
            self._theta[m, :, m:] = values
            self._dtheta[m, :, m:] = derivs
        self._orders = np.arange(L + 1)
        self._parity = (-1.0) ** self._orders
        self._neg_index = (nlon - self._orders) % nlon

        logger.debug(f"SphericalTransform ready: L={L}, grid {nlat}x{nlon}")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nlat, self.nlon

    def _check_field(self, field: SpectralField):
        if field.L != self.L:
            raise TransformError(f"field truncation L={field.L} does not match transform L={self.L}")

    def _to_grid(self, coeffs: np.ndarray, table: np.ndarray) -> np.ndarray:
        L = self.L
        pos = coeffs[:, L:]           # m = 0 .. L
        neg = coeffs[:, L::-1]        # m = 0, -1, .. -L
        g_pos = np.einsum("mil,lm->im", table, pos)
        g_neg = np.einsum("mil,lm->im", table, neg) * self._parity[None, :]

        fourier = np.zeros((self.nlat, self.nlon), dtype=complex)
        fourier[:, :L + 1] = g_pos
        fourier[:, self._neg_index[1:]] = g_neg[:, 1:]
        return np.fft.ifft(fourier, axis=1) * (self.nlon / _ROOT_2PI)

    @staticmethod
    def _finish(grid: np.ndarray, real: bool) -> np.ndarray:
        return grid.real.copy() if real else grid

    def synthesize(self, field: SpectralField, real: Optional[bool] = None) -> np.ndarray:
        """Grid values of shape (nlat, nlon); real output for conjugate-symmetric fields."""
        self._check_field(field)
        if real is None:
            real = field.is_real()
        return self._finish(self._to_grid(field.coeffs, self._theta), real)

    def analyze(self, grid: np.ndarray) -> SpectralField:
        grid = np.asarray(grid)
        if grid.shape != self.shape:
            raise TransformError(f"grid shape {grid.shape} does not match transform grid {self.shape}")
        L = self.L
        fourier = np.fft.fft(grid, axis=1) * (2.0 * np.pi / self.nlon)
        pos = fourier[:, :L + 1]
        neg = fourier[:, self._neg_index]

        weighted = self._theta * self.weights[None, :, None]
        c_pos = np.einsum("mil,im->lm", weighted, pos) / _ROOT_2PI
        c_neg = np.einsum("mil,im->lm", weighted, neg) * self._parity[None, :] / _ROOT_2PI

        coeffs = np.zeros((L + 1, 2 * L + 1), dtype=complex)
        coeffs[:, L::-1] = c_neg
        coeffs[:, L:] = c_pos
        return SpectralField(L, coeffs)

    def gradient(self, field: SpectralField, real: Optional[bool] = None) -> Tuple[np.ndarray, np.ndarray]:
        """(d/dpsi, d/dx3) of the field sampled on the grid."""
        self._check_field(field)
        if real is None:
            real = field.is_real()
        m = field.orders[None, :]
        d_psi = self._to_grid(field.coeffs * (1j * m), self._theta)
        d_x = self._to_grid(field.coeffs, self._dtheta)
        return self._finish(d_psi, real), self._finish(d_x, real)

    def integrate(self, grid: np.ndarray) -> float:
        """Surface integral over S^2 (area element dpsi dx3)."""
        grid = np.asarray(grid)
        if grid.shape != self.shape:
            raise TransformError(f"grid shape {grid.shape} does not match transform grid {self.shape}")
        return float(np.real(self.weights @ grid.sum(axis=1)) * (2.0 * np.pi / self.nlon))

    def x3_grid(self) -> np.ndarray:
        return np.repeat(self.x[:, None], self.nlon, axis=1)
