import math

import numpy as np
import pytest
import scipy.linalg

import src.spectra.sweep as sweep_module
from src.errors import EigenSolverError
from src.models import SpectrumResult, SweepRecord
from src.operators.criteria import arnold_bound, rayleigh_bound, real_spectrum_guard
from src.operators.matrices import sector_operator
from src.operators.zonal import legendre_model
from src.spectra.propagator import basis_vector, propagator_growth, sector_generator
from src.spectra.reference import ACCEPTANCE_BANDS, CONVERGENCE_CASES, closest_reference, within_band
from src.spectra.solver import eig, max_imag, real_cutoff
from src.spectra.sweep import (
    SpectraConfig,
    converged_from,
    default_scan,
    n_convergence,
    omega_grid,
    omega_sweep,
    threshold,
)


def test_eig_identity():
    result = eig(np.eye(3))
    assert np.allclose(result.eigenvalues, [1, 1, 1])
    assert result.residual_bound < 1e-14


def test_eig_rotation_generator():
    result = eig([[0.0, -1.0], [1.0, 0.0]])
    assert np.allclose(np.sort_complex(result.eigenvalues), [-1j, 1j])
    assert np.allclose(result.ordered(), [1j, -1j])


def test_eig_triangular_p2_block():
    omega = 6.0
    result = eig([[-omega / 2, 0.0], [-2 / math.sqrt(5), -omega / 6]])
    assert np.allclose(np.sort(result.eigenvalues.real), [-3.0, -1.0])
    assert np.max(np.abs(result.eigenvalues.imag)) == 0.0


def test_eig_rejects_bad_input():
    with pytest.raises(ValueError):
        eig(np.ones((2, 3)))
    with pytest.raises(ValueError):
        eig([[np.nan]])


def test_eig_failure_reports_partial_eigenvalues(monkeypatch):
    def broken_eig(*args, **kwargs):
        raise scipy.linalg.LinAlgError("QR did not converge")

    monkeypatch.setattr(scipy.linalg, "eig", broken_eig)
    with pytest.raises(EigenSolverError) as info:
        eig([[0.0, -1.0], [1.0, 0.0]])
    assert np.allclose(np.sort_complex(info.value.partial.eigenvalues), [-1j, 1j])
    assert info.value.partial.residual_bound is None


def test_eig_rejects_large_residual(monkeypatch):
    def wrong_vectors(M, **kwargs):
        return np.array([1.0 + 0j, 2.0 + 0j]), np.eye(2)

    monkeypatch.setattr(scipy.linalg, "eig", wrong_vectors)
    with pytest.raises(EigenSolverError) as info:
        eig([[1.0, 1.0], [0.0, 3.0]])
    assert info.value.partial.residual_bound > 1e-8
    assert np.allclose(info.value.partial.eigenvalues, [1.0, 2.0])
    # eigenvalue-only solves carry no residual to check
    assert eig([[1.0, 1.0], [0.0, 3.0]], compute_residual=False).residual_bound is None


def nearest_mismatch(a, b):
    return float(np.max(np.min(np.abs(np.asarray(a)[:, None] - np.asarray(b)[None, :]), axis=1)))


def test_eig_shift_and_similarity():
    M = sector_operator(legendre_model(3, omega=0.2), 1, 30).entries
    base = eig(M).eigenvalues
    shifted = eig(M + 2.0 * np.eye(30)).eigenvalues
    assert nearest_mismatch(shifted, base + 2.0) < 1e-8

    signs = np.diag([(-1.0) ** j for j in range(30)])
    flipped = eig(signs @ M @ signs).eigenvalues
    assert nearest_mismatch(flipped, base) < 1e-8


def test_max_imag():
    real = SpectrumResult(eigenvalues=[1.0, 2.0, -3.0], matrix_norm=1.0)
    assert max_imag(real, 1e-8) == (0.0, 0)
    pair = SpectrumResult(eigenvalues=[1j, -1j], matrix_norm=1.0)
    assert max_imag(pair, 1e-8) == (1.0, 1)
    with pytest.raises(ValueError):
        max_imag(pair, -1.0)


def test_real_cutoff_is_relative():
    assert real_cutoff(100.0) == pytest.approx(1e-6)


def test_p2_sector_has_real_spectrum():
    config = SpectraConfig(N=50)
    records = omega_sweep(legendre_model(2), 1, omega_grid(0.0, 6.0, 0.5), 50, config)
    assert len(records) == 13
    for rec in records:
        assert rec.ok
        assert rec.max_imag < rec.tau
        assert rec.unstable_count == 0


@pytest.mark.slow
def test_p2_sector_has_real_spectrum_at_large_n():
    for N in (200, 400):
        records = omega_sweep(legendre_model(2), 1, omega_grid(0.0, 6.0, 0.5), N, SpectraConfig(N=N))
        assert all(rec.max_imag < rec.tau for rec in records)


def test_p3_first_sector_unstable_without_rotation():
    records = omega_sweep(legendre_model(3), 1, [0.0], 100)
    assert records[0].unstable_count > 0
    assert records[0].max_imag > 0
    assert records[0].top_eigenvalues[0].imag == pytest.approx(records[0].max_imag)


def test_sweep_preserves_order_and_rejects_unsorted():
    omegas = [0.0, 0.1, 0.5, 2.0]
    records = omega_sweep(legendre_model(3), 2, omegas, 40)
    assert [r.omega for r in records] == omegas
    with pytest.raises(ValueError):
        omega_sweep(legendre_model(3), 2, [1.0, 0.0], 40)


def test_parallel_sweep_matches_serial():
    omegas = omega_grid(0.0, 1.0, 0.25)
    serial = omega_sweep(legendre_model(3), 1, omegas, 40, SpectraConfig(workers=1))
    parallel = omega_sweep(legendre_model(3), 1, omegas, 40, SpectraConfig(workers=2))
    assert [r.max_imag for r in serial] == [r.max_imag for r in parallel]


def test_guarded_sectors_agree_with_eigensolver():
    omegas = omega_grid(0.0, 8.0, 1.0)
    for nu, k in ((2, 1), (2, 2), (2, 3), (3, 3), (4, 4)):
        model = legendre_model(nu)
        records = omega_sweep(model, k, omegas, 60, SpectraConfig(use_guard=False))
        for rec in records:
            if real_spectrum_guard(model.with_omega(rec.omega), k) is not None:
                assert rec.unstable_count == 0, (nu, k, rec.omega)


def test_guard_short_circuits_sweep():
    records = omega_sweep(legendre_model(2), 2, [0.0, 1.0], 50, SpectraConfig(use_guard=True))
    assert [r.status for r in records] == ["guarded", "guarded"]
    assert all(r.ok and r.unstable_count == 0 for r in records)


def test_large_rotation_stabilizes_p3_second_sector():
    records = omega_sweep(legendre_model(3), 2, [9.6, 12.0], 100)
    assert all(r.unstable_count == 0 for r in records)


def test_n_convergence_records():
    records = n_convergence(legendre_model(2), 2, 3.0, [10, 20, 40])
    assert [r.N for r in records] == [10, 20, 40]
    assert records[0].delta is None
    assert all(r.unstable_count == 0 and r.max_imag < 1e-10 for r in records)
    assert converged_from(records) == 10
    with pytest.raises(ValueError):
        n_convergence(legendre_model(2), 2, 3.0, [20, 10])


@pytest.mark.slow
def test_convergence_cases_settle_in_n():
    for nu, k, omega in CONVERGENCE_CASES:
        records = n_convergence(legendre_model(nu), k, omega, [200, 400])
        assert abs(records[1].max_imag - records[0].max_imag) < 1e-6, (nu, k, omega)


@pytest.mark.slow
def test_p4_first_sector_multiple_unstable_modes():
    records = omega_sweep(legendre_model(4), 1, [0.1], 400)
    assert records[0].unstable_count >= 2


def test_omega_grid_is_inclusive():
    grid = omega_grid(0.0, 3.0, 0.05)
    assert len(grid) == 61
    assert grid[-1] == pytest.approx(3.0)
    assert list(omega_grid(1.0, 1.0, 0.5)) == [1.0]
    with pytest.raises(ValueError):
        omega_grid(0.0, 1.0, 0.0)


def test_threshold_without_instability_is_degenerate():
    result = threshold(legendre_model(2), 1, omega_grid(0.0, 2.0, 0.5), 30)
    assert result.degenerate
    assert result.omega_star == 0.0


def test_threshold_brackets_last_crossing():
    result = threshold(legendre_model(3), 1, omega_grid(0.0, 3.0, 0.1), 60, tol_omega=1e-2)
    assert not result.degenerate
    lo, hi = result.bracket
    assert hi - lo <= 1e-2
    assert result.omega_star == hi
    assert 0.0 < result.omega_star <= 3.0
    assert all(step.unstable == (step.omega <= lo) for step in result.history)


def test_default_threshold_scan_resolves_narrow_windows():
    config = SpectraConfig()
    assert config.omega_step == pytest.approx(0.01)
    grid = default_scan(config)
    assert len(grid) == 1201
    assert grid[-1] == pytest.approx(12.0)
    assert np.allclose(np.diff(grid), 0.01)
    assert len(default_scan(SpectraConfig(omega_max=1.0, omega_step=0.25))) == 5


def test_threshold_keeps_failed_midpoints_on_unstable_side(monkeypatch):
    def fake_point(omega, model, k, N, config):
        if omega in (0.0, 0.5):
            return SweepRecord(omega=omega, max_imag=0.2, unstable_count=1, tau=1e-8)
        if omega == 1.0:
            return SweepRecord(omega=omega, max_imag=0.0, unstable_count=0, tau=1e-8)
        return SweepRecord(omega=omega, max_imag=float("nan"), unstable_count=0, tau=float("nan"),
                           status="error: eigensolver failed")

    monkeypatch.setattr(sweep_module, "_evaluate_point", fake_point)
    result = threshold(legendre_model(3), 1, [0.0, 0.5, 1.0], 20, tol_omega=0.05)
    assert result.omega_star == 1.0
    assert result.history
    assert all(step.unstable for step in result.history)
    assert all(step.status.startswith("error") for step in result.history)
    assert result.as_dict()["bisection"][0]["status"] == "error: eigensolver failed"


@pytest.mark.slow
def test_published_thresholds():
    config = SpectraConfig(N=400, workers=4)
    for (nu, k), (low, high) in ACCEPTANCE_BANDS.items():
        model = legendre_model(nu)
        result = threshold(model, k, default_scan(config), 400, 1e-3, config)
        assert low <= result.omega_star <= high, (nu, k, result.omega_star)
        assert result.omega_star <= rayleigh_bound(model) + 1e-3
        assert result.omega_star <= arnold_bound(model) + 1e-3


def test_reference_lookup():
    assert closest_reference(3, 1, 0.45) == ("plotted", 0.4)
    assert closest_reference(3, 1, 0.9) == ("stated", 1.0)
    assert closest_reference(None, 1, 0.5) == (None, None)
    assert within_band(4, 3, 6.5)
    assert not within_band(4, 3, 7.5)
    assert within_band(5, 1, 1.0) is None


def test_propagator_weak_instability():
    gamma = sector_generator(sector_operator(legendre_model(2), 1, 20))
    times = [0.0, 1.0, 5.0, 25.0, 50.0]
    norms = propagator_growth(gamma, 0, times)
    for t, value in zip(times, norms):
        expected = math.sqrt(1 + 0.8 * t * t)
        assert abs(value - expected) / expected < 1e-6
    assert norms[2] == pytest.approx(math.sqrt(21), rel=1e-6)
    assert 1.99 <= norms[4] / norms[3] <= 2.0


def test_propagator_skew_isometry():
    skew = np.array([[0.0, -1.0], [1.0, 0.0]])
    norms = propagator_growth(skew, [0.6, 0.8], [0.0, 0.3, 7.0])
    assert np.allclose(norms, 1.0, atol=1e-12)


def test_propagator_of_sector_matrix_at_short_times():
    op = sector_operator(legendre_model(2), 1, 10)
    assert np.allclose(sector_generator(op), 1j * op.entries)
    norms = propagator_growth(op.entries, basis_vector(10, 0), [0.0, 1.0, 5.0])
    assert norms[0] == pytest.approx(1.0)
    assert norms[1] == pytest.approx(math.sqrt(1.8), rel=1e-6)
    assert norms[2] == pytest.approx(math.sqrt(21), rel=1e-6)


def test_propagator_rejects_bad_times():
    with pytest.raises(ValueError):
        propagator_growth(np.eye(2), 0, [1.0, 0.5])
    with pytest.raises(ValueError):
        propagator_growth(np.eye(2), 0, [-1.0])
    with pytest.raises(ValueError):
        basis_vector(3, 3)
