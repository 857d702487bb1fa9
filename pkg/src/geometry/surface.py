"""
Coriolis factor chi = e3 . nu and the zonal momentum coordinate xi for surfaces
of revolution, evaluated through rho = r^2 so the poles stay finite.
"""
import logging
from typing import Union

import numpy as np
import pandas as pd
from scipy.interpolate import CubicSpline

from src.basis.legendre import gauss_rule
from src.errors import DegenerateProfileError
from src.geometry.models import SurfaceProfile, ZonalGeometry

logger = logging.getLogger("ZonalStab.Geometry")

DEGENERACY_TOL = 1e-14
PANEL_NODES = 16

ArrayLike = Union[float, np.ndarray]


def ellipsoid_profile(a: float) -> SurfaceProfile:
    """rho(x) = 1 - x^2/a^2; a = 1 is the unit sphere."""
    if not a > 0:
        raise ValueError(f"pole height a must be > 0, got {a}")
    a = float(a)
    inv_a2 = 1.0 / (a * a)
    return SurfaceProfile(
        a=a,
        rho=lambda x: 1.0 - np.asarray(x) ** 2 * inv_a2,
        drho=lambda x: -2.0 * np.asarray(x) * inv_a2,
        d2rho=lambda x: np.full_like(np.asarray(x, dtype=float), -2.0 * inv_a2),
        kind="sphere" if a == 1.0 else "ellipsoid",
        beta=inv_a2 - inv_a2 * inv_a2,
    )


def sphere_profile() -> SurfaceProfile:
    return ellipsoid_profile(1.0)


def _as_abscissas(profile: SurfaceProfile, x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(np.abs(arr) > profile.a * (1.0 + 1e-12)):
        raise ValueError(f"abscissa outside [-a, a] with a={profile.a}")
    return np.clip(arr, -profile.a, profile.a)


def _discriminant(profile: SurfaceProfile, x: np.ndarray) -> np.ndarray:
    """4 rho + rho'^2; rejects interior nodes where it degenerates."""
    s2 = 4.0 * profile.rho(x) + profile.drho(x) ** 2
    interior = np.abs(x) < profile.a
    if np.any(interior & (s2 < DEGENERACY_TOL)):
        bad = np.atleast_1d(x)[np.atleast_1d(interior & (s2 < DEGENERACY_TOL))]
        raise DegenerateProfileError(f"4*rho + rho'^2 vanishes at x3 = {bad[0]:.6g}")
    return s2


def _unwrap(value: np.ndarray, x) -> ArrayLike:
    return float(value) if np.ndim(x) == 0 else value


def chi(profile: SurfaceProfile, x) -> ArrayLike:
    """chi = -rho' / sqrt(4 rho + rho'^2)."""
    xs = _as_abscissas(profile, x)
    s2 = _discriminant(profile, xs)
    return _unwrap(-profile.drho(xs) / np.sqrt(s2), x)


def chi_prime(profile: SurfaceProfile, x) -> ArrayLike:
    xs = _as_abscissas(profile, x)
    s2 = _discriminant(profile, xs)
    rho, d1, d2 = profile.rho(xs), profile.drho(xs), profile.d2rho(xs)
    return _unwrap((2.0 * d1 ** 2 - 4.0 * rho * d2) / s2 ** 1.5, x)


def xi_prime(profile: SurfaceProfile, x) -> ArrayLike:
    """xi' = sqrt(4 rho + rho'^2) / 2, i.e. r sqrt(1 + r'^2)."""
    xs = _as_abscissas(profile, x)
    return _unwrap(0.5 * np.sqrt(_discriminant(profile, xs)), x)


def chi_r_form(profile: SurfaceProfile, x) -> ArrayLike:
    """chi = -r' / sqrt(1 + r'^2); singular at the poles."""
    xs = _as_abscissas(profile, x)
    r = np.sqrt(profile.rho(xs))
    if np.any(r <= 0.0):
        raise ValueError("the r-form is undefined where r = 0")
    dr = profile.drho(xs) / (2.0 * r)
    return _unwrap(-dr / np.sqrt(1.0 + dr ** 2), x)


def xi_prime_r_form(profile: SurfaceProfile, x) -> ArrayLike:
    xs = _as_abscissas(profile, x)
    r = np.sqrt(profile.rho(xs))
    if np.any(r <= 0.0):
        raise ValueError("the r-form is undefined where r = 0")
    dr = profile.drho(xs) / (2.0 * r)
    return _unwrap(r * np.sqrt(1.0 + dr ** 2), x)


def ellipsoid_chi(a: float, x) -> ArrayLike:
    """Closed form (x/a^2) / sqrt(1 - beta x^2)."""
    beta = 1.0 / a ** 2 - 1.0 / a ** 4
    xs = np.asarray(x, dtype=float)
    return _unwrap((xs / a ** 2) / np.sqrt(1.0 - beta * xs ** 2), x)


def ellipsoid_xi_prime(a: float, x) -> ArrayLike:
    beta = 1.0 / a ** 2 - 1.0 / a ** 4
    xs = np.asarray(x, dtype=float)
    return _unwrap(np.sqrt(1.0 - beta * xs ** 2), x)


def uniform_grid(profile: SurfaceProfile, count: int) -> np.ndarray:
    if count < 2:
        raise ValueError(f"grid needs at least 2 points, got {count}")
    return np.linspace(-profile.a, profile.a, count)


def xi(profile: SurfaceProfile, grid) -> ZonalGeometry:
    """
    Tabulates chi, xi and their derivatives on an ascending grid spanning [-a, a].
    xi is integrated panel by panel with a fixed Gauss rule and shifted so its
    surface mean vanishes, which means xi(-a) = -xi(a).
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or len(grid) < 2:
        raise ValueError("grid must be a 1-D array with at least 2 points")
    if np.any(np.diff(grid) <= 0.0):
        raise ValueError("grid must be strictly increasing")
    tol = 1e-12 * profile.a
    if abs(grid[0] + profile.a) > tol or abs(grid[-1] - profile.a) > tol:
        raise ValueError(f"grid must span [-a, a] with a={profile.a}")

    if profile.is_sphere:
        chi_values = grid.copy()
        dchi = np.ones_like(grid)
        dxi = np.ones_like(grid)
        xi_values = grid.copy()
    else:
        chi_values = chi(profile, grid)
        dchi = chi_prime(profile, grid)
        dxi = xi_prime(profile, grid)

        rule = gauss_rule(PANEL_NODES)
        left, right = grid[:-1], grid[1:]
        half = 0.5 * (right - left)
        mid = 0.5 * (right + left)
        nodes = mid[:, None] + half[:, None] * rule.nodes[None, :]
        panels = half * (xi_prime(profile, nodes) @ rule.weights)
        cumulative = np.concatenate(([0.0], np.cumsum(panels)))
        xi_values = cumulative - 0.5 * cumulative[-1]

    if not np.all(dchi > 0.0):
        logger.warning(f"chi is not monotone on this {profile.kind} profile; stability checks use sign data only")

    return ZonalGeometry(
        x=grid, chi=chi_values, xi=xi_values, dchi=dchi, dxi=dxi, a=profile.a, kind=profile.kind
    )


def prolate_area(a: float) -> float:
    """Area of the spheroid with equatorial radius 1 and polar semi-axis a > 1."""
    if a <= 1.0:
        raise ValueError(f"prolate spheroid needs a > 1, got {a}")
    e = np.sqrt(1.0 - 1.0 / a ** 2)
    return float(2.0 * np.pi * (1.0 + (a / e) * np.arcsin(e)))


def check_poles(profile: SurfaceProfile, rel_tol: float = 1e-6):
    """rho(+-a) = 0 with rho'(-a) > 0 > rho'(a)."""
    ends = np.array([-profile.a, profile.a])
    rho_ends = profile.rho(ends)
    slope = profile.drho(ends)
    scale = max(1.0, float(np.max(np.abs(slope))))
    if np.any(np.abs(rho_ends) > rel_tol * scale):
        raise DegenerateProfileError(f"rho must vanish at the poles, got {rho_ends.tolist()}")
    if not (slope[0] > 0.0 and slope[1] < 0.0):
        raise DegenerateProfileError(f"pole slopes must satisfy rho'(-a) > 0 > rho'(a), got {slope.tolist()}")


def load_profile_csv(path: str) -> SurfaceProfile:
    """Two-column CSV (x3, rho) with a header row and strictly increasing x3."""
    frame = pd.read_csv(path)
    if frame.shape[1] < 2:
        raise ValueError(f"profile table {path} needs two columns (x3, rho)")
    x = frame.iloc[:, 0].to_numpy(dtype=float)
    rho = frame.iloc[:, 1].to_numpy(dtype=float)
    if len(x) < 4:
        raise ValueError(f"profile table {path} needs at least 4 rows, got {len(x)}")
    if np.any(np.diff(x) <= 0.0):
        raise ValueError(f"x3 column of {path} must be strictly increasing")
    a = float(x[-1])
    if abs(x[0] + a) > 1e-9 * max(1.0, a):
        raise ValueError(f"profile table {path} must be symmetric in extent: [{x[0]}, {x[-1]}]")
    if np.any(rho[1:-1] <= 0.0):
        raise DegenerateProfileError(f"rho must be positive between the poles in {path}")

    spline = CubicSpline(x, rho)
    d1 = spline.derivative(1)
    d2 = spline.derivative(2)
    profile = SurfaceProfile(
        a=a,
        rho=lambda t: spline(t),
        drho=lambda t: d1(t),
        d2rho=lambda t: d2(t),
        kind="tabulated",
    )
    check_poles(profile)

    dchi = chi_prime(profile, x)
    if not np.all(dchi > 0.0):
        logger.warning(f"Tabulated profile {path} gives non-monotone chi (positive curvature violated); accepted")
    logger.info(f"Loaded tabulated profile {path}: {len(x)} rows, a={a:g}")
    return profile
