"""
Stationary solutions and initial-data files for the vorticity integrator.
"""
import logging
import math
import os
from typing import Dict, Optional, Tuple

from src.basis.legendre import eigen_degree, seed_constant
from src.dynamics.models import InitialDataSpec
from src.dynamics.spectral import chi_field, laplacian
from src.models import SpectralField

logger = logging.getLogger("ZonalStab.Dynamics")

FIXTURE_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "..", "fixtures"))
CANONICAL_FIXTURE = os.path.join(FIXTURE_DIR, "canonical_decay.txt")


def sectoral_harmonic(k: int, L: int) -> SpectralField:
    """Re (x1 + i x2)^k = (1 - x3^2)^{k/2} cos(k psi); k=2 gives x1^2 - x2^2."""
    if k < 1 or k > L:
        raise ValueError(f"need 1 <= k <= L, got k={k}, L={L}")
    # (1 - x^2)^{k/2} e^{ik psi} = sqrt(2 pi) / c_k * Y_k^k
    value = math.sqrt(2.0 * math.pi) / (2.0 * seed_constant(k))
    return SpectralField.from_modes(L, {(k, k): value})


def stationary_fixture(kind: str, L: int, k: int = 2, omega: float = 0.0,
                       profile: Optional[Dict[int, float]] = None,
                       g_modes: Optional[Dict[int, complex]] = None) -> SpectralField:
    """
    Vorticity w of a stationary state.

    kind='zonal': any zonal field, given as {l: coefficient of Y_l^0}.
    kind='nonzonal': w = Delta f with f = Omega/(lambda_k - 2) x3 + g_k, where g_k is
    a degree-k harmonic (default Re (x1 + i x2)^k, or {m: coefficient of Y_k^m}).
    """
    if kind == "zonal":
        profile = profile or {2: 1.0, 3: 0.5}
        modes = {}
        for ell, value in profile.items():
            if ell < 1:
                raise ValueError("zonal profile degrees must be >= 1 (mean-zero vorticity)")
            modes[(ell, 0)] = float(value)
        return SpectralField.from_modes(L, modes)

    if kind != "nonzonal":
        raise ValueError(f"unknown fixture kind '{kind}'; expected 'zonal' or 'nonzonal'")
    if k < 2:
        raise ValueError(f"non-zonal stationary states need k >= 2 (lambda_k != 2), got k={k}")
    if k > L:
        raise ValueError(f"degree k={k} exceeds truncation L={L}")

    if g_modes:
        g = SpectralField.from_modes(L, {(k, m): value for m, value in g_modes.items()})
    else:
        g = sectoral_harmonic(k, L)
    shift = omega / (eigen_degree(k) - 2)
    # chi = x3, so shift * chi is the x3 component of f
    f = shift * chi_field(L) + g
    return laplacian(f)


def parse_initial_data(path: str) -> InitialDataSpec:
    """
    key=value lines (L, dt, T, omegas, sample_every) plus coefficient lines
    `l,m,re,im` with m >= 0; '#' starts a comment.
    """
    values: Dict[str, str] = {}
    modes = []
    with open(path, "r") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" in line:
                key, value = (part.strip() for part in line.split("=", 1))
                values[key.lower()] = value
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != 4:
                raise ValueError(f"{path}:{lineno}: expected 'l,m,re,im', got '{line}'")
            modes.append((int(parts[0]), int(parts[1]), float(parts[2]), float(parts[3])))

    missing = [key for key in ("l", "dt", "t", "omegas") if key not in values]
    if missing:
        raise ValueError(f"{path}: missing keys {missing}")
    if not modes:
        raise ValueError(f"{path}: no coefficient lines")
    spec = InitialDataSpec(
        L=int(values["l"]),
        dt=float(values["dt"]),
        T=float(values["t"]),
        omegas=tuple(float(w) for w in values["omegas"].split(",") if w.strip()),
        modes=tuple(modes),
        sample_every=int(values.get("sample_every", 10)),
    )
    logger.info(f"Loaded initial data {path}: L={spec.L}, {len(spec.modes)} modes, Omegas={list(spec.omegas)}")
    return spec


def initial_field(spec: InitialDataSpec) -> SpectralField:
    modes: Dict[Tuple[int, int], complex] = {}
    for ell, m, re, im in spec.modes:
        if ell < 1:
            raise ValueError("initial vorticity must be mean-zero: degree 0 is not allowed")
        modes[(ell, m)] = modes.get((ell, m), 0.0) + complex(re, im)
    return SpectralField.from_modes(spec.L, modes)


def resolve_fixture(name_or_path: str) -> str:
    if name_or_path == "canonical":
        return CANONICAL_FIXTURE
    return name_or_path
