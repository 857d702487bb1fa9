import math

import numpy as np
import pandas as pd
import pytest

from src.errors import DegenerateProfileError
from src.geometry.surface import (
    check_poles,
    chi,
    chi_prime,
    chi_r_form,
    ellipsoid_chi,
    ellipsoid_profile,
    ellipsoid_xi_prime,
    load_profile_csv,
    prolate_area,
    sphere_profile,
    uniform_grid,
    xi,
    xi_prime,
    xi_prime_r_form,
)


def test_sphere_chi_equals_x3():
    profile = sphere_profile()
    assert chi(profile, 0.5) == pytest.approx(0.5, abs=1e-15)
    x = np.linspace(-1, 1, 41)
    assert np.max(np.abs(chi(profile, x) - x)) < 1e-12


def test_sphere_geometry_table():
    profile = sphere_profile()
    geometry = xi(profile, uniform_grid(profile, 11))
    assert geometry.kind == "sphere"
    assert np.max(np.abs(geometry.chi - geometry.x)) < 1e-12
    assert np.max(np.abs(geometry.xi - geometry.x)) < 1e-12
    assert geometry.total_area == pytest.approx(4 * math.pi, abs=1e-12)


def test_ellipsoid_chi_closed_form():
    assert chi(ellipsoid_profile(2.0), 1.0) == pytest.approx(0.25 / math.sqrt(1 - 3 / 16), abs=1e-12)
    assert chi(ellipsoid_profile(2.0), 1.0) == pytest.approx(0.277350, abs=1e-6)
    assert ellipsoid_chi(2.0, 1.0) == pytest.approx(chi(ellipsoid_profile(2.0), 1.0), abs=1e-14)


def test_chi_vanishes_at_equator():
    for a in (0.5, 1.0, 2.0):
        assert chi(ellipsoid_profile(a), 0.0) == pytest.approx(0.0, abs=1e-15)


def test_ellipsoid_beta():
    assert ellipsoid_profile(1.0).kind == "sphere"
    assert ellipsoid_profile(1.0).beta == 0.0
    assert ellipsoid_profile(2.0).beta == pytest.approx(3 / 16)
    assert ellipsoid_profile(0.5).beta == pytest.approx(-12.0)
    with pytest.raises(ValueError):
        ellipsoid_profile(0.0)


def test_rho_and_r_forms_agree_in_the_interior():
    for a in (0.5, 2.0):
        profile = ellipsoid_profile(a)
        x = np.linspace(-0.9 * a, 0.9 * a, 31)
        assert np.max(np.abs(chi(profile, x) - chi_r_form(profile, x))) < 1e-12
        assert np.max(np.abs(xi_prime(profile, x) - xi_prime_r_form(profile, x))) < 1e-12
        assert np.max(np.abs(xi_prime(profile, x) - ellipsoid_xi_prime(a, x))) < 1e-12


def test_rho_form_finite_at_poles():
    profile = ellipsoid_profile(2.0)
    assert chi(profile, 2.0) == pytest.approx(1.0, abs=1e-12)
    assert chi(profile, -2.0) == pytest.approx(-1.0, abs=1e-12)
    with pytest.raises(ValueError):
        chi_r_form(profile, 2.0)


def test_chi_prime_matches_finite_difference():
    profile = ellipsoid_profile(0.7)
    x = np.linspace(-0.6, 0.6, 9)
    h = 1e-6
    fd = (chi(profile, x + h) - chi(profile, x - h)) / (2 * h)
    assert np.max(np.abs(chi_prime(profile, x) - fd)) < 1e-6


def test_prolate_area_from_xi():
    profile = ellipsoid_profile(2.0)
    geometry = xi(profile, uniform_grid(profile, 201))
    assert abs(geometry.total_area - prolate_area(2.0)) < 1e-8


def test_xi_is_centered_and_increasing():
    profile = ellipsoid_profile(0.5)
    geometry = xi(profile, uniform_grid(profile, 51))
    assert geometry.xi[0] == pytest.approx(-geometry.xi[-1], abs=1e-14)
    assert np.all(np.diff(geometry.xi) > 0)
    assert geometry.area_below(25) == pytest.approx(0.5 * geometry.total_area, rel=1e-12)
    assert geometry.chi_monotone


def test_xi_rejects_bad_grids():
    profile = ellipsoid_profile(2.0)
    with pytest.raises(ValueError):
        xi(profile, np.linspace(-1, 1, 11))
    with pytest.raises(ValueError):
        xi(profile, np.array([-2.0, 0.5, 0.0, 2.0]))


def test_load_profile_csv(tmp_path):
    x = np.linspace(-2.0, 2.0, 81)
    frame = pd.DataFrame({"x3": x, "rho": 1.0 - x ** 2 / 4.0})
    path = tmp_path / "ellipsoid.csv"
    frame.to_csv(path, index=False)

    profile = load_profile_csv(str(path))
    assert profile.kind == "tabulated"
    assert profile.a == pytest.approx(2.0)
    points = np.linspace(-1.5, 1.5, 13)
    assert np.max(np.abs(chi(profile, points) - ellipsoid_chi(2.0, points))) < 1e-6


def test_load_profile_rejects_unsorted(tmp_path):
    path = tmp_path / "bad.csv"
    pd.DataFrame({"x3": [-1.0, 0.5, 0.0, 1.0], "rho": [0.0, 0.75, 1.0, 0.0]}).to_csv(path, index=False)
    with pytest.raises(ValueError):
        load_profile_csv(str(path))


def test_pole_conditions():
    check_poles(ellipsoid_profile(2.0))
    bad = ellipsoid_profile(1.0)
    shifted = type(bad)(a=bad.a, rho=lambda x: bad.rho(x) + 0.1, drho=bad.drho, d2rho=bad.d2rho)
    with pytest.raises(DegenerateProfileError):
        check_poles(shifted)
