"""
Dynamics package - spectral vorticity integrator on the rotating sphere.
"""
from src.dynamics.averaging import omega_decay, time_average
from src.dynamics.fixtures import initial_field, parse_initial_data, stationary_fixture
from src.dynamics.integrator import DynamicsConfig, evolve, ledger, rhs, step_rk4
from src.dynamics.spectral import inv_laplacian, jacobian, laplacian, weak_norm, zonal_project

__all__ = [
    "omega_decay",
    "time_average",
    "initial_field",
    "parse_initial_data",
    "stationary_fixture",
    "DynamicsConfig",
    "evolve",
    "ledger",
    "rhs",
    "step_rk4",
    "inv_laplacian",
    "jacobian",
    "laplacian",
    "weak_norm",
    "zonal_project",
]
