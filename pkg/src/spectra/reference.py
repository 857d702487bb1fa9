"""
Published stability thresholds for the P_nu(V_k) models. Two disagreeing values
exist for nu = 3: the values read off the sweep plots and the ones stated alongside them.
"""
from typing import Dict, Optional, Tuple

# (nu, k) -> {source: Omega beyond which the sector is stable}
REFERENCE_THRESHOLDS: Dict[Tuple[int, int], Dict[str, float]] = {
    (3, 1): {"plotted": 0.4, "stated": 1.0},
    (3, 2): {"plotted": 2.25, "stated": 0.5},
    (4, 1): {"plotted": 7.5},
    (4, 2): {"plotted": 7.0},
    (4, 3): {"plotted": 6.5},
}

# acceptance bands at N = 400; the (3, 1) band spans both published values
ACCEPTANCE_BANDS: Dict[Tuple[int, int], Tuple[float, float]] = {
    (3, 1): (0.3, 1.1),
    (3, 2): (2.0, 2.5),
    (4, 1): (7.0, 8.0),
    (4, 2): (6.5, 7.5),
    (4, 3): (6.0, 7.0),
}

# (nu, k, Omega) points whose max_imag settles once N is large enough
CONVERGENCE_CASES = (
    (3, 1, 0.2),
    (3, 2, 2.0),
    (4, 1, 0.1),
    (4, 2, 1.0),
)


def closest_reference(nu: Optional[int], k: int, omega_star: float) -> Tuple[Optional[str], Optional[float]]:
    table = REFERENCE_THRESHOLDS.get((nu, k))
    if not table:
        return None, None
    source = min(table, key=lambda s: abs(table[s] - omega_star))
    return source, table[source]


def within_band(nu: int, k: int, omega_star: float) -> Optional[bool]:
    band = ACCEPTANCE_BANDS.get((nu, k))
    if band is None:
        return None
    return band[0] <= omega_star <= band[1]
