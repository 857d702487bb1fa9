from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

import numpy as np


class ModelVariant(Enum):
    LEGENDRE = "legendre"
    GENERAL = "general"


def frozen_array(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class LadderCoefficients:
    """Couplings a_l of multiplication by x3 on the sector V_k, l = k..ell_max."""
    k: int
    ell_max: int
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", frozen_array(self.values))

    def a(self, ell: int) -> float:
        if ell > self.ell_max:
            raise IndexError(f"a_{ell} outside stored range {self.k}..{self.ell_max}")
        # zeta_l = 0 below the sector, so the coupling vanishes there
        if ell <= self.k:
            return 0.0
        return float(self.values[ell - self.k])


@dataclass(frozen=True)
class SectorBasisSpec:
    k: int
    ell_min: int
    N: int
    norms: np.ndarray  # n_l for l = ell_min .. ell_min + N - 1

    def __post_init__(self):
        object.__setattr__(self, "norms", frozen_array(self.norms))

    @property
    def ells(self) -> np.ndarray:
        return np.arange(self.ell_min, self.ell_min + self.N)

    def index_of(self, ell: int) -> int:
        """Row/column index of degree ell; the single place the offset is applied."""
        idx = ell - self.ell_min
        if idx < 0 or idx >= self.N:
            raise IndexError(f"degree {ell} not in sector k={self.k} truncation N={self.N}")
        return idx

    def degree_of(self, index: int) -> int:
        if index < 0 or index >= self.N:
            raise IndexError(f"index {index} outside 0..{self.N - 1}")
        return self.ell_min + index


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozen_array(self.nodes))
        object.__setattr__(self, "weights", frozen_array(self.weights))

    @property
    def count(self) -> int:
        return len(self.nodes)

    def integrate(self, values: np.ndarray) -> np.ndarray:
        """Integrates sampled values (nodes along axis 0) over [-1, 1]."""
        return np.tensordot(self.weights, values, axes=(0, 0))


def triangular_mask(L: int) -> np.ndarray:
    ell = np.arange(L + 1)[:, None]
    m = np.arange(-L, L + 1)[None, :]
    return np.abs(m) <= ell


@dataclass(frozen=True)
class SpectralField:
    """
    Spherical-harmonic coefficients c[l, m] of a scalar on S^2, triangular truncation L.
    Stored densely as an (L+1, 2L+1) complex array with column m + L.
    """
    L: int
    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=complex, copy=True)
        if arr.shape != (self.L + 1, 2 * self.L + 1):
            raise ValueError(f"coefficient array shape {arr.shape} does not match L={self.L}")
        arr[~triangular_mask(self.L)] = 0.0
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def zeros(cls, L: int) -> "SpectralField":
        return cls(L, np.zeros((L + 1, 2 * L + 1), dtype=complex))

    @classmethod
    def from_modes(cls, L: int, modes: dict, real: bool = True) -> "SpectralField":
        """
        Builds a field from {(l, m): value}. With real=True only m >= 0 may be given
        and the partner c[l, -m] = (-1)^m conj(c[l, m]) is filled in.
        """
        arr = np.zeros((L + 1, 2 * L + 1), dtype=complex)
        for (ell, m), value in modes.items():
            if ell > L or abs(m) > ell or ell < 0:
                raise ValueError(f"mode ({ell}, {m}) outside triangular truncation L={L}")
            if real and m < 0:
                raise ValueError("real fields take m >= 0 only; negative m is implied")
            if real and m == 0 and abs(np.imag(value)) > 0:
                raise ValueError(f"m = 0 coefficient of a real field must be real, got {value}")
            arr[ell, m + L] += value
            if real and m > 0:
                arr[ell, -m + L] += (-1) ** m * np.conj(value)
        return cls(L, arr)

    def coeff(self, ell: int, m: int) -> complex:
        return complex(self.coeffs[ell, m + self.L])

    def replace(self, coeffs: np.ndarray) -> "SpectralField":
        return SpectralField(self.L, coeffs)

    @property
    def degrees(self) -> np.ndarray:
        return np.arange(self.L + 1)

    @property
    def orders(self) -> np.ndarray:
        return np.arange(-self.L, self.L + 1)

    def conjugate_mismatch(self) -> float:
        m = self.orders
        mirrored = np.conj(self.coeffs[:, ::-1]) * ((-1.0) ** np.abs(m))[None, :]
        return float(np.max(np.abs(self.coeffs - mirrored)))

    def is_real(self, tol: float = 1e-12) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.coeffs))))
        return self.conjugate_mismatch() <= tol * scale

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    def __add__(self, other: "SpectralField") -> "SpectralField":
        return SpectralField(self.L, self.coeffs + other.coeffs)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        return SpectralField(self.L, self.coeffs - other.coeffs)

    def __neg__(self) -> "SpectralField":
        return SpectralField(self.L, -self.coeffs)

    def __mul__(self, scalar: float) -> "SpectralField":
        return SpectralField(self.L, self.coeffs * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True)
class SectorOperator:
    k: int
    N: int
    entries: np.ndarray
    spec: SectorBasisSpec
    model: "object"  # ZonalModel; typed loosely to avoid an import cycle

    def __post_init__(self):
        object.__setattr__(self, "entries", frozen_array(self.entries))

    @property
    def omega(self) -> float:
        return self.model.omega

    @property
    def lambdas(self) -> np.ndarray:
        ells = self.spec.ells
        return (ells * (ells + 1)).astype(float)

    @property
    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.entries, "fro"))


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray
    matrix_norm: float
    residual_bound: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", frozen_array(self.eigenvalues, dtype=complex))

    def ordered(self) -> np.ndarray:
        """Descending imaginary part, ties broken by ascending real part."""
        ev = self.eigenvalues
        order = np.lexsort((ev.real, -ev.imag))
        return ev[order]


@dataclass(frozen=True)
class SweepRecord:
    omega: float
    max_imag: float
    unstable_count: int
    tau: float
    top_eigenvalues: Tuple[complex, ...] = field(default_factory=tuple)
    status: str = "ok"

    @property
    def ok(self) -> bool:
        # guarded points skip the eigensolve but are certified real
        return self.status in ("ok", "guarded")
