import numpy as np
import pytest

from src.geometry.surface import ellipsoid_profile, uniform_grid, xi
from src.models import ModelVariant
from src.operators.criteria import (
    arnold_bound,
    arnold_check,
    check_criteria,
    fjortoft_check,
    rayleigh_bound,
    rayleigh_check,
    real_spectrum_guard,
)
from src.operators.models import ZonalModel
from src.operators.zonal import general_zonal, legendre_model


def raw_model(a_coeffs, wprime_coeffs, omega=0.0):
    """A and w' set independently, for probing the criteria logic."""
    return ZonalModel(
        variant=ModelVariant.GENERAL, omega=omega, f_coeffs=[0.0],
        a_coeffs=a_coeffs, wprime_coeffs=wprime_coeffs,
    )


def test_rayleigh_examples():
    assert rayleigh_check(legendre_model(2, omega=3.0))
    assert not rayleigh_check(legendre_model(2, omega=7.0))
    assert not rayleigh_check(legendre_model(3, omega=9.6))
    assert rayleigh_check(legendre_model(3, omega=0.0))


def test_fjortoft_examples():
    assert fjortoft_check(legendre_model(2, omega=0.0))
    assert not fjortoft_check(legendre_model(2, omega=7.0))


def test_fjortoft_fails_for_constant_shear():
    # f = x3: A = 1 and B = Omega + 2
    assert not fjortoft_check(general_zonal([0.0, 1.0], omega=-1.0))
    rng = np.random.default_rng(11)
    for _ in range(20):
        b = rng.normal(size=4)
        assert not fjortoft_check(raw_model([rng.normal()], -b))


def test_fjortoft_fails_when_a_equals_minus_b():
    rng = np.random.default_rng(12)
    for _ in range(20):
        a = rng.normal(size=rng.integers(1, 6))
        model = raw_model(a, a)   # B = -w' = -A
        assert not fjortoft_check(model)
    assert not fjortoft_check(general_zonal([0.0, 1.0], omega=-3.0))


def test_fjortoft_implies_rayleigh_on_random_profiles():
    rng = np.random.default_rng(2024)
    grid = np.linspace(-1, 1, 801)
    k_grid = np.linspace(-6, 6, 401)
    violations = 0
    fjortoft_count = 0
    for _ in range(500):
        degree = rng.integers(1, 7)
        model = general_zonal(rng.normal(size=degree + 1), omega=rng.uniform(-10, 10))
        fjortoft = fjortoft_check(model, grid, k_grid)
        fjortoft_count += fjortoft
        if fjortoft and not rayleigh_check(model, grid):
            violations += 1
    assert violations == 0
    assert fjortoft_count > 0


def test_arnold_on_sphere():
    assert arnold_check(legendre_model(2, omega=7.0))
    assert not arnold_check(legendre_model(2, omega=3.0))


def test_arnold_excludes_rayleigh():
    for omega in np.linspace(0, 12, 25):
        model = legendre_model(4, omega=omega)
        assert not (arnold_check(model) and rayleigh_check(model))


def test_bounds():
    assert rayleigh_bound(legendre_model(2)) == pytest.approx(6.0, abs=1e-12)
    assert rayleigh_bound(legendre_model(3)) == pytest.approx(2.4, abs=1e-12)
    assert arnold_bound(legendre_model(4)) == pytest.approx(80 / 7, abs=1e-12)
    assert arnold_bound(legendre_model(4), grid=np.linspace(-1, 1, 4001)) == pytest.approx(20 * 4 / 7, abs=1e-12)


def test_arnold_on_ellipsoid_above_bound():
    profile = ellipsoid_profile(2.0)
    geometry = xi(profile, uniform_grid(profile, 401))
    model = legendre_model(2).with_geometry(geometry)
    bound = arnold_bound(model, geometry)
    assert bound > 0
    assert arnold_check(model.with_omega(bound + 1.0), geometry)


def test_guard_degree_clause():
    cert = real_spectrum_guard(legendre_model(2, omega=3.0), 2)
    assert cert is not None and cert.clause == "degree_bound"
    cert = real_spectrum_guard(legendre_model(3, omega=0.0), 3)
    assert cert is not None and cert.clause == "degree_bound"
    cert = real_spectrum_guard(legendre_model(4, omega=0.0), 4)
    assert cert is not None and cert.clause == "degree_bound"


def test_guard_sign_clause():
    cert = real_spectrum_guard(legendre_model(2, omega=7.0), 1)
    assert cert is not None and cert.clause == "no_sign_change"


def test_guard_absent():
    assert real_spectrum_guard(legendre_model(3, omega=0.0), 1) is None
    assert real_spectrum_guard(legendre_model(4, omega=1.0), 3) is None
    with pytest.raises(ValueError):
        real_spectrum_guard(legendre_model(3), 0)


def test_check_criteria_report():
    report = check_criteria(legendre_model(2, omega=7.0), k=1)
    payload = report.as_dict()
    assert payload["rayleigh"] is False
    assert payload["fjortoft"] is False
    assert payload["arnold_stable"] is True
    assert payload["guard"] == "no_sign_change"

    report = check_criteria(legendre_model(2, omega=3.0), k=1)
    assert report.rayleigh
    assert report.witnesses["rayleigh"]["negative_at"] < -0.5 < report.witnesses["rayleigh"]["positive_at"]
    assert report.guard is None
