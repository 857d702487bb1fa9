"""
Omega sweeps, N-convergence studies and threshold bisection over the sector
operators. Independent points are farmed out to a process pool; results come
back in input order.
"""
import functools
import logging
import multiprocessing as mp
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence

import numpy as np

from src.errors import ZonalStabError
from src.models import SweepRecord
from src.operators.criteria import real_spectrum_guard
from src.operators.matrices import sector_operator
from src.operators.models import ZonalModel
from src.spectra.models import BisectionStep, ConvergenceRecord, ThresholdResult
from src.spectra.reference import closest_reference
from src.spectra.solver import TAU_REL, eig, max_imag, real_cutoff

logger = logging.getLogger("ZonalStab.Sweep")


@dataclass
class SpectraConfig:
    N: int = 400
    workers: int = 1
    tau_rel: float = TAU_REL
    top_count: int = 8
    tol_omega: float = 1e-3
    convergence_tol: float = 1e-8
    compute_residual: bool = False
    use_guard: bool = False       # skip eigensolves on certified sectors
    omega_max: float = 12.0       # default threshold scan 0 .. omega_max
    omega_step: float = 0.01      # coarser steps skip the narrow unstable windows near the P4 thresholds


def _evaluate_point(omega: float, model: ZonalModel, k: int, N: int, config: SpectraConfig) -> SweepRecord:
    """One (Omega, N) spectrum; failures become a status string instead of an exception."""
    point = model.with_omega(omega)
    if config.use_guard:
        cert = real_spectrum_guard(point, k)
        if cert is not None:
            return SweepRecord(omega=float(omega), max_imag=0.0, unstable_count=0, tau=0.0, status="guarded")
    try:
        op = sector_operator(point, k, N)
        result = eig(op.entries, compute_residual=config.compute_residual)
    except ZonalStabError as e:
        logger.warning(f"Sweep point Omega={omega:g} failed: {e}")
        return SweepRecord(
            omega=float(omega), max_imag=float("nan"), unstable_count=0, tau=float("nan"),
            status=f"error: {e}",
        )
    tau = real_cutoff(result.matrix_norm, config.tau_rel)
    top, count = max_imag(result, tau)
    leading = tuple(complex(v) for v in result.ordered()[:config.top_count])
    return SweepRecord(omega=float(omega), max_imag=top, unstable_count=count, tau=tau, top_eigenvalues=leading)


def _map(func, items: Sequence, workers: int) -> list:
    if workers > 1 and len(items) > 1:
        pool = mp.Pool(processes=min(workers, len(items)))
        try:
            return pool.map(func, items)
        finally:
            pool.close()
            pool.join()
    return [func(item) for item in items]


def omega_sweep(model: ZonalModel, k: int, omegas: Sequence[float], N: Optional[int] = None,
                config: Optional[SpectraConfig] = None) -> List[SweepRecord]:
    config = config or SpectraConfig()
    N = N or config.N
    omegas = [float(w) for w in omegas]
    if any(b < a for a, b in zip(omegas, omegas[1:])):
        raise ValueError("Omega grid must be sorted ascending")

    logger.info(f"Sweeping {model.label} on V_{k}: {len(omegas)} Omega values, N={N}, workers={config.workers}")
    worker = functools.partial(_evaluate_point, model=model, k=k, N=N, config=config)
    records = _map(worker, omegas, config.workers)

    failed = sum(1 for r in records if not r.ok)
    if failed:
        logger.warning(f"{failed} of {len(records)} sweep points failed")
    return records


def _evaluate_size(N: int, model: ZonalModel, k: int, config: SpectraConfig) -> SweepRecord:
    return _evaluate_point(model.omega, model, k, N, config)


def n_convergence(model: ZonalModel, k: int, omega: float, n_list: Sequence[int],
                  config: Optional[SpectraConfig] = None) -> List[ConvergenceRecord]:
    """max_imag per truncation; converged when the change from the previous N is below tolerance."""
    config = config or SpectraConfig()
    n_list = [int(n) for n in n_list]
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("N list must be strictly ascending")

    point = model.with_omega(omega)
    worker = functools.partial(_evaluate_size, model=point, k=k, config=config)
    sweep = _map(worker, n_list, config.workers)

    records = []
    previous = None
    for n, rec in zip(n_list, sweep):
        delta = None if previous is None or not rec.ok else abs(rec.max_imag - previous)
        converged = delta is not None and delta < config.convergence_tol
        records.append(ConvergenceRecord(
            N=n, max_imag=rec.max_imag, unstable_count=rec.unstable_count,
            delta=delta, converged=converged, status=rec.status,
        ))
        previous = rec.max_imag if rec.ok else None
    return records


def converged_from(records: Sequence[ConvergenceRecord]) -> Optional[int]:
    """Smallest N from which every later step is flagged converged."""
    first = None
    for prev, rec in zip(records, records[1:]):
        if rec.converged:
            if first is None:
                first = prev.N
        else:
            first = None
    return first


def _is_unstable(record: SweepRecord) -> bool:
    return record.ok and record.unstable_count > 0


def threshold(model: ZonalModel, k: int, omegas: Sequence[float], N: Optional[int] = None,
              tol_omega: Optional[float] = None, config: Optional[SpectraConfig] = None) -> ThresholdResult:
    """
    Scans the full Omega grid, then bisects the LAST unstable-to-stable crossing,
    since max_imag may switch on and off before it settles.
    """
    config = config or SpectraConfig()
    N = N or config.N
    tol = tol_omega or config.tol_omega
    if tol <= 0:
        raise ValueError(f"tol_omega must be > 0, got {tol}")

    scan = omega_sweep(model, k, omegas, N, config)
    unstable = [i for i, r in enumerate(scan) if _is_unstable(r)]
    start = float(scan[0].omega)
    if not unstable:
        logger.info(f"No instability for {model.label} on V_{k} in the scanned range")
        return ThresholdResult(omega_star=start, bracket=(start, start), scan=tuple(scan), degenerate=True)

    last = unstable[-1]
    if last == len(scan) - 1:
        end = float(scan[-1].omega)
        logger.warning(f"{model.label} on V_{k} is still unstable at the range end Omega={end:g}")
        return ThresholdResult(omega_star=end, bracket=(end, end), scan=tuple(scan), unstable_at_end=True)

    lo, hi = float(scan[last].omega), float(scan[last + 1].omega)
    history = []
    point_config = replace(config, workers=1)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        rec = _evaluate_point(mid, model, k, N, point_config)
        # a failed midpoint is not evidence of stability; keep it on the unstable side
        unstable = _is_unstable(rec) or not rec.ok
        if not rec.ok:
            logger.warning(f"Bisection point Omega={mid:g} failed ({rec.status}); treated as unstable")
        step = BisectionStep(omega=mid, max_imag=rec.max_imag, unstable=unstable, status=rec.status)
        history.append(step)
        if step.unstable:
            lo = mid
        else:
            hi = mid

    source, value = closest_reference(model.nu, k, hi)
    logger.info(f"Threshold {model.label} V_{k}: Omega_star={hi:.6g} (bracket {lo:.6g}..{hi:.6g})")
    return ThresholdResult(
        omega_star=hi, bracket=(lo, hi), history=tuple(history), scan=tuple(scan),
        reference=source, reference_value=value,
    )


def default_scan(config: Optional[SpectraConfig] = None) -> np.ndarray:
    config = config or SpectraConfig()
    return omega_grid(0.0, config.omega_max, config.omega_step)


def omega_grid(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive grid start, start + step, ... up to stop within half a step."""
    if step <= 0:
        raise ValueError(f"Omega step must be > 0, got {step}")
    if stop < start:
        raise ValueError(f"Omega range end {stop} is below its start {start}")
    count = int(np.floor((stop - start) / step + 0.5)) + 1
    return start + step * np.arange(count)
