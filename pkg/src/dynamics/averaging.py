"""
Time averages along trajectories and the Omega-decay experiment: the non-zonal
part of a time average shrinks as the rotation rate grows.
"""
import functools
import logging
import multiprocessing as mp
from typing import Callable, Optional, Sequence, Union

import numpy as np
from scipy.integrate import trapezoid

from src.dynamics.integrator import DynamicsConfig, evolve
from src.dynamics.models import DecayResult, Trajectory
from src.dynamics.spectral import weak_norm, zonal_project
from src.models import SpectralField
from src.utils.stats import fit_loglog_slope

logger = logging.getLogger("ZonalStab.Dynamics")

WINDOW_TOL = 1e-9

InitialState = Union[SpectralField, Callable[..., SpectralField]]


def time_average(trajectory: Trajectory, S: float, T: float) -> SpectralField:
    """(1/T) * integral of w over [S, S + T], trapezoidal in the stored snapshots."""
    if T <= 0:
        raise ValueError(f"averaging length T must be > 0, got {T}")
    times = np.asarray(trajectory.times)
    lo, hi = S, S + T
    if lo < times[0] - WINDOW_TOL or hi > times[-1] + WINDOW_TOL:
        raise ValueError(f"window [{lo:g}, {hi:g}] outside trajectory [{times[0]:g}, {times[-1]:g}]")
    inside = np.where((times >= lo - WINDOW_TOL) & (times <= hi + WINDOW_TOL))[0]
    if len(inside) < 2:
        raise ValueError(f"window [{lo:g}, {hi:g}] holds fewer than two samples")
    t_win = times[inside]
    if abs(t_win[0] - lo) > WINDOW_TOL or abs(t_win[-1] - hi) > WINDOW_TOL:
        raise ValueError(f"window [{lo:g}, {hi:g}] is not aligned with the sample times")

    stack = np.stack([trajectory.states[i].coeffs for i in inside])
    mean = trapezoid(stack, x=t_win, axis=0) / T
    return trajectory.states[0].replace(mean)


def _decay_point(omega: float, w0: InitialState, T: float, dt: float, sample_every: int,
                 config: DynamicsConfig) -> float:
    start = w0(omega=omega) if callable(w0) else w0
    trajectory = evolve(start, omega, T, dt, sample_every, config)
    averaged = time_average(trajectory, 0.0, trajectory.times[-1])
    return weak_norm(averaged - zonal_project(averaged), config.weak_order)


def omega_decay(w0: InitialState, omegas: Sequence[float], T: float, dt: float,
                sample_every: int = 10, config: Optional[DynamicsConfig] = None) -> DecayResult:
    """
    weak_norm((I - Pi) A_{0,T} w) per Omega and the fitted log-log slope. w0 is
    either one field for every Omega or a picklable factory called as w0(omega=...).
    """
    omegas = [float(w) for w in omegas]
    if len(omegas) < 2:
        raise ValueError("the decay fit needs at least two Omega values")
    if any(w <= 0 for w in omegas):
        raise ValueError("Omega values must be > 0 for a log-log fit")
    if config is None:
        L = w0(omega=omegas[0]).L if callable(w0) else w0.L
        config = DynamicsConfig(L=L)

    worker = functools.partial(_decay_point, w0=w0, T=T, dt=dt, sample_every=sample_every, config=config)
    if config.workers > 1:
        pool = mp.Pool(processes=min(config.workers, len(omegas)))
        try:
            norms = pool.map(worker, omegas)
        finally:
            pool.close()
            pool.join()
    else:
        norms = [worker(w) for w in omegas]

    slope = fit_loglog_slope(omegas, norms)
    logger.info(f"Omega-decay: norms {['%.3e' % n for n in norms]} -> slope {slope:.3f}")
    return DecayResult(omegas=tuple(omegas), norms=tuple(norms), slope=slope, order=config.weak_order)
