"""
Geometry package - surfaces of revolution, Coriolis factor chi and zonal coordinate xi.
"""
from src.geometry.models import SurfaceProfile, ZonalGeometry
from src.geometry.surface import (
    chi,
    chi_prime,
    ellipsoid_profile,
    load_profile_csv,
    sphere_profile,
    uniform_grid,
    xi,
    xi_prime,
)

__all__ = [
    "SurfaceProfile",
    "ZonalGeometry",
    "chi",
    "chi_prime",
    "ellipsoid_profile",
    "load_profile_csv",
    "sphere_profile",
    "uniform_grid",
    "xi",
    "xi_prime",
]
