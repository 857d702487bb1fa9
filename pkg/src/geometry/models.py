"""
Geometry - Data Models
Surfaces of revolution x1^2 + x2^2 = rho(x3) and their zonal coordinates.
"""
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from src.models import frozen_array


@dataclass(frozen=True)
class SurfaceProfile:
    """rho(x3) = r(x3)^2 on [-a, a], vanishing at the poles."""
    a: float                                   # pole height
    rho: Callable[[np.ndarray], np.ndarray]
    drho: Callable[[np.ndarray], np.ndarray]
    d2rho: Callable[[np.ndarray], np.ndarray]
    kind: str = "tabulated"                    # 'sphere' | 'ellipsoid' | 'tabulated'
    beta: Optional[float] = None               # 1/a^2 - 1/a^4, ellipsoids only

    @property
    def is_sphere(self) -> bool:
        return self.kind == "sphere"


@dataclass(frozen=True)
class ZonalGeometry:
    x: np.ndarray
    chi: np.ndarray
    xi: np.ndarray
    dchi: np.ndarray
    dxi: np.ndarray
    a: float = 1.0
    kind: str = "sphere"

    def __post_init__(self):
        for name in ("x", "chi", "xi", "dchi", "dxi"):
            object.__setattr__(self, name, frozen_array(getattr(self, name)))

    @property
    def total_area(self) -> float:
        return float(2.0 * np.pi * (self.xi[-1] - self.xi[0]))

    def area_below(self, index: int) -> float:
        """Area of the cap {x3 <= x[index]}."""
        return float(2.0 * np.pi * (self.xi[index] - self.xi[0]))

    @property
    def chi_monotone(self) -> bool:
        return bool(np.all(self.dchi > 0.0))
