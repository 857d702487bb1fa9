"""
Operators package - zonal base flows, sector matrices and stability criteria.
"""
from src.operators.criteria import (
    arnold_bound,
    arnold_check,
    check_criteria,
    fjortoft_check,
    rayleigh_bound,
    rayleigh_check,
    real_spectrum_guard,
)
from src.operators.matrices import export_matrix, mult_matrix, sector_operator
from src.operators.models import CriterionReport, GuardCertificate, ZonalModel
from src.operators.zonal import general_zonal, legendre_model, model_from_name

__all__ = [
    "arnold_bound",
    "arnold_check",
    "check_criteria",
    "fjortoft_check",
    "rayleigh_bound",
    "rayleigh_check",
    "real_spectrum_guard",
    "export_matrix",
    "mult_matrix",
    "sector_operator",
    "CriterionReport",
    "GuardCertificate",
    "ZonalModel",
    "general_zonal",
    "legendre_model",
    "model_from_name",
]
