"""
Basis package - normalized associated Legendre sectors, ladder algebra,
Gauss quadrature and spherical transforms.
"""
from src.basis.legendre import (
    eigen_degree,
    evaluate_sector_basis,
    gauss_rule,
    ladder_coefficients,
    normalized_legendre,
    sector_basis_spec,
)
from src.basis.transforms import SphericalTransform, minimum_grid

__all__ = [
    "eigen_degree",
    "evaluate_sector_basis",
    "gauss_rule",
    "ladder_coefficients",
    "normalized_legendre",
    "sector_basis_spec",
    "SphericalTransform",
    "minimum_grid",
]
