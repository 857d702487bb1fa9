"""
Pseudo-spectral integrator for the rotating vorticity equation on the unit sphere,
    dw/dt = -<J grad f, grad(w - Omega chi)>,  f = Delta^{-1} w,
with classical RK4 in time and an invariant ledger sampled along the way.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.basis.transforms import SphericalTransform
from src.errors import CFLViolationError
from src.models import SpectralField
from src.dynamics import spectral
from src.dynamics.models import InvariantLedger, Trajectory

logger = logging.getLogger("ZonalStab.Dynamics")


@dataclass
class DynamicsConfig:
    L: int = 31
    dt: float = 1e-3
    T: float = 1.0
    sample_every: int = 10
    c_cfl: float = 0.5
    max_halvings: int = 4
    nlat: Optional[int] = None
    nlon: Optional[int] = None
    workers: int = 1
    weak_order: float = 3.0


def rhs(w: SpectralField, omega: float, chi: Optional[SpectralField] = None,
        transform: Optional[SphericalTransform] = None) -> SpectralField:
    chi = chi if chi is not None else spectral.chi_field(w.L)
    f = spectral.inv_laplacian(w)
    q = w - omega * chi
    tendency = -spectral.jacobian(f, q, transform)
    coeffs = np.array(tendency.coeffs)
    coeffs[0, :] = 0.0
    return tendency.replace(coeffs)


def step_rk4(w: SpectralField, dt: float, omega: float, chi: Optional[SpectralField] = None,
             transform: Optional[SphericalTransform] = None) -> SpectralField:
    if dt <= 0:
        raise ValueError(f"time step must be > 0, got {dt}")
    chi = chi if chi is not None else spectral.chi_field(w.L)
    k1 = rhs(w, omega, chi, transform)
    k2 = rhs(w + (0.5 * dt) * k1, omega, chi, transform)
    k3 = rhs(w + (0.5 * dt) * k2, omega, chi, transform)
    k4 = rhs(w + dt * k3, omega, chi, transform)
    return w + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def max_speed(w: SpectralField, transform: Optional[SphericalTransform] = None) -> float:
    """max grid |u| with u = J grad f: |u|^2 = (1-x^2) f_x^2 + f_psi^2 / (1-x^2)."""
    transform = transform or spectral.get_transform(w.L)
    f = spectral.inv_laplacian(w)
    f_psi, f_x = transform.gradient(f, real=True)
    s2 = (1.0 - transform.x ** 2)[:, None]
    speed2 = s2 * f_x ** 2 + f_psi ** 2 / s2
    return float(np.sqrt(np.max(speed2)))


def cfl_limit(w: SpectralField, c_cfl: float = 0.5, transform: Optional[SphericalTransform] = None) -> float:
    speed = max_speed(w, transform)
    return np.inf if speed == 0.0 else c_cfl / (w.L * speed)


def ledger(w: SpectralField, omega: float, t: float,
           transform: Optional[SphericalTransform] = None) -> InvariantLedger:
    return InvariantLedger(
        time=float(t),
        energy=spectral.energy(w),
        xi_moment=spectral.xi_moment(w),
        casimir2=spectral.casimir2(w, omega),
        sup_q=spectral.sup_q(w, omega, transform),
    )


def _enforce_cfl(w, dt, n, total, sample_every, halvings, config, transform) -> Tuple[float, int, int, int, int]:
    limit = cfl_limit(w, config.c_cfl, transform)
    while dt > limit:
        if halvings >= config.max_halvings:
            raise CFLViolationError(
                f"dt={dt:.3e} exceeds CFL limit {limit:.3e} after {halvings} halvings"
            )
        dt *= 0.5
        n, total, sample_every = 2 * n, 2 * total, 2 * sample_every
        halvings += 1
        logger.warning(f"CFL guard: halving dt to {dt:.3e} (limit {limit:.3e})")
    return dt, n, total, sample_every, halvings


def evolve(w0: SpectralField, omega: float, T: float, dt: float, sample_every: int = 10,
           config: Optional[DynamicsConfig] = None) -> Trajectory:
    """
    Integrates from w0 to time T with fixed-step RK4, sampling the ledger every
    `sample_every` steps (and at T). The CFL guard is re-checked at every sample.
    """
    config = config or DynamicsConfig(L=w0.L)
    if dt <= 0:
        raise ValueError(f"time step must be > 0, got {dt}")
    if T <= 0:
        raise ValueError(f"final time must be > 0, got {T}")
    if sample_every < 1:
        raise ValueError(f"sample_every must be >= 1, got {sample_every}")

    transform = spectral.get_transform(w0.L, config.nlat, config.nlon)
    chi = spectral.chi_field(w0.L)
    total = max(1, int(round(T / dt)))
    n, halvings = 0, 0
    w = w0

    trajectory = Trajectory(omega=float(omega), dt=dt)
    trajectory.record(0.0, w, ledger(w, omega, 0.0, transform))
    while n < total:
        if n % sample_every == 0:
            dt, n, total, sample_every, halvings = _enforce_cfl(
                w, dt, n, total, sample_every, halvings, config, transform
            )
        w = step_rk4(w, dt, omega, chi, transform)
        n += 1
        if n % sample_every == 0 or n == total:
            t = n * dt
            trajectory.record(t, w, ledger(w, omega, t, transform))

    trajectory.dt = dt
    logger.info(f"Evolved L={w0.L} Omega={omega:g} to T={total * dt:g} in {total} steps (dt={dt:.3e})")
    return trajectory
