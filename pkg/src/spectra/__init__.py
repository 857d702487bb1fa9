"""
Spectra package - dense eigensolves, Omega sweeps, N-convergence, thresholds and
propagator growth.
"""
from src.spectra.propagator import basis_vector, propagator_growth, sector_generator
from src.spectra.solver import eig, max_imag, real_cutoff
from src.spectra.sweep import SpectraConfig, default_scan, n_convergence, omega_grid, omega_sweep, threshold

__all__ = [
    "basis_vector",
    "propagator_growth",
    "sector_generator",
    "eig",
    "max_imag",
    "real_cutoff",
    "SpectraConfig",
    "n_convergence",
    "default_scan",
    "omega_grid",
    "omega_sweep",
    "threshold",
]
