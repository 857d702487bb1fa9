"""
Stability criteria for zonal flows: Rayleigh and Fjortoft (necessary conditions
for non-real spectrum), Arnold (sufficient for nonlinear stability), and the
closed-form real-spectrum guards.
"""
import logging
from typing import Optional, Tuple

import numpy as np

from src.basis.legendre import eigen_degree
from src.geometry.models import ZonalGeometry
from src.models import ModelVariant
from src.operators.models import CriterionReport, GuardCertificate, ZonalModel

logger = logging.getLogger("ZonalStab.Criteria")

SIGN_TOL = 1e-12
ARNOLD_TOL = 1e-10
DEFAULT_GRID_POINTS = 4001
DEFAULT_K_POINTS = 2001


def default_grid(count: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    return np.linspace(-1.0, 1.0, count)


def _grid(grid) -> np.ndarray:
    return default_grid() if grid is None else np.asarray(grid, dtype=float)


def _rayleigh(model: ZonalModel, grid: np.ndarray) -> Tuple[bool, dict]:
    b = model.B(grid)
    pos = b > SIGN_TOL
    neg = b < -SIGN_TOL
    changes = bool(pos.any() and neg.any())
    witness = {}
    if changes:
        witness = {"positive_at": float(grid[np.argmax(b)]), "negative_at": float(grid[np.argmin(b)])}
    return changes, witness


def rayleigh_check(model: ZonalModel, grid=None) -> bool:
    """True iff B = Omega - w' takes both signs on the grid."""
    return _rayleigh(model, _grid(grid))[0]


def _fjortoft(model: ZonalModel, grid: np.ndarray, k_grid) -> Tuple[bool, Optional[float]]:
    a = model.A(grid) * np.ones_like(grid)
    b = model.B(grid) * np.ones_like(grid)
    # only points where the sign of B is certified take part
    pos = b > SIGN_TOL
    neg = b < -SIGN_TOL
    if k_grid is None:
        k_grid = np.linspace(a.min() - 1.0, a.max() + 1.0, DEFAULT_K_POINTS)
    candidates = [np.asarray(k_grid, dtype=float), [a.min() - 1.0, a.max() + 1.0, 0.0]]
    if pos.any():
        candidates.append([a[pos].max()])
    if neg.any():
        candidates.append([a[neg].min()])
    ks = np.unique(np.concatenate([np.atleast_1d(c) for c in candidates]))

    active = pos | neg
    a_act, b_act = a[active], b[active]
    for K in ks:
        if not np.any(b_act * (K - a_act) < -SIGN_TOL):
            return False, float(K)
    return True, None


def fjortoft_check(model: ZonalModel, grid=None, k_grid=None) -> bool:
    """
    True iff every K admits s with B(s)(K - A(s)) < 0. The real-line quantifier
    is sampled on k_grid plus the critical values max{A : B > 0}, min{A : B < 0}.
    """
    return _fjortoft(model, _grid(grid), k_grid)[0]


def surface_w_prime(model: ZonalModel, geometry: ZonalGeometry) -> np.ndarray:
    """
    w' for the zonal flow on a surface of revolution,
    w = (1/xi') d/dx3 (xi' (1 - chi^2) f'), differentiated on the geometry grid.
    """
    x = geometry.x
    inner = geometry.dxi * (1.0 - geometry.chi ** 2) * model.A(x)
    w = np.gradient(inner, x, edge_order=2) / geometry.dxi
    return np.gradient(w, x, edge_order=2)


def _arnold_quantity(model: ZonalModel, geometry: Optional[ZonalGeometry], grid: np.ndarray):
    """(x, Omega chi'(xi) - w'(xi)) where d/dxi = (1/xi') d/dx3."""
    if geometry is None or geometry.kind == "sphere":
        return grid, model.B(grid) * np.ones_like(grid)
    x = geometry.x
    numerator = model.omega * geometry.dchi - surface_w_prime(model, geometry)
    return x, numerator / geometry.dxi


def _arnold(model: ZonalModel, geometry, grid) -> Tuple[bool, dict]:
    x, q = _arnold_quantity(model, geometry, grid)
    stable = bool(np.all(q > ARNOLD_TOL) or np.all(q < -ARNOLD_TOL))
    idx = int(np.argmin(np.abs(q)))
    return stable, {"min_abs_at": float(x[idx]), "min_abs": float(abs(q[idx]))}


def arnold_check(model: ZonalModel, geometry: Optional[ZonalGeometry] = None, grid=None) -> bool:
    """True iff Omega chi' - w' (in xi) is bounded away from zero with one sign."""
    if geometry is not None and geometry.kind != "sphere" and not np.all(geometry.dchi > 0.0):
        logger.warning("Arnold check on a geometry with non-monotone chi; result uses sign data only")
    return _arnold(model, geometry, _grid(grid))[0]


def rayleigh_bound(model: ZonalModel, grid=None) -> float:
    """Smallest Omega >= 0 beyond which B no longer changes sign: max(0, max w')."""
    g = _grid(grid)
    return float(max(0.0, np.max(model.w_prime(g))))


def arnold_bound(model: ZonalModel, geometry: Optional[ZonalGeometry] = None, grid=None) -> float:
    """Smallest Omega >= 0 beyond which Arnold's quantity is positive everywhere."""
    if geometry is None or geometry.kind == "sphere":
        return rayleigh_bound(model, grid)
    w_prime = surface_w_prime(model, geometry)
    return float(max(0.0, np.max(w_prime / geometry.dchi)))


def real_spectrum_guard(model: ZonalModel, k: int, grid=None) -> Optional[GuardCertificate]:
    """
    Certificate that Spec M_k is real: B has no sign change, or (Legendre flows
    only) lambda_nu <= lambda_k.
    """
    if k < 1:
        raise ValueError(f"sector k must be >= 1, got {k}")
    if not rayleigh_check(model, grid):
        return GuardCertificate(
            clause="no_sign_change",
            detail=f"B = Omega - w' keeps one sign on [-1, 1] at Omega={model.omega:g}",
        )
    if model.variant is ModelVariant.LEGENDRE and eigen_degree(model.nu) <= eigen_degree(k):
        return GuardCertificate(
            clause="degree_bound",
            detail=f"lambda_{model.nu} = {eigen_degree(model.nu)} <= lambda_{k} = {eigen_degree(k)}",
        )
    return None


def check_criteria(model: ZonalModel, geometry: Optional[ZonalGeometry] = None, grid=None,
                   k_grid=None, k: Optional[int] = None) -> CriterionReport:
    g = _grid(grid)
    rayleigh, r_wit = _rayleigh(model, g)
    fjortoft, failing_k = _fjortoft(model, g, k_grid)
    arnold, a_wit = _arnold(model, geometry, g)
    witnesses = {"rayleigh": r_wit, "fjortoft_failing_K": failing_k, "arnold": a_wit}
    guard = real_spectrum_guard(model, k, g) if k is not None else None

    if fjortoft and not rayleigh:
        # cannot happen with the shared sign tolerance
        logger.error(f"Fjortoft holds without Rayleigh for {model.label} at Omega={model.omega:g}")
    return CriterionReport(
        rayleigh=rayleigh, fjortoft=fjortoft, arnold_stable=arnold, witnesses=witnesses, guard=guard
    )
