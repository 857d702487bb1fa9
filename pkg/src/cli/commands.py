"""
Subcommand implementations. Each takes a resolved RunConfig, writes its result
files and returns a CommandResult for the manifest.
"""
import functools
import logging
import os
from dataclasses import replace
from typing import List, Optional

import numpy as np

from src.cli.models import CommandResult, RunConfig
from src.dynamics.averaging import omega_decay
from src.dynamics.fixtures import initial_field, parse_initial_data, resolve_fixture, stationary_fixture
from src.dynamics.integrator import evolve
from src.dynamics.models import LEDGER_COLUMNS
from src.errors import ConfigError
from src.geometry.surface import ellipsoid_profile, load_profile_csv, uniform_grid, xi
from src.operators.criteria import arnold_bound, check_criteria, default_grid, rayleigh_bound
from src.operators.matrices import export_matrix, sector_operator
from src.operators.models import ZonalModel
from src.operators.zonal import general_zonal, legendre_model, model_from_name
from src.spectra.propagator import basis_vector, propagator_growth, sector_generator
from src.spectra.reference import CONVERGENCE_CASES, REFERENCE_THRESHOLDS, within_band
from src.spectra.sweep import converged_from, default_scan, n_convergence, omega_grid, omega_sweep, threshold
from src.utils.journal import ResultJournal, write_json
from src.utils.plotting import SvgLinePlot, plot_curve
from src.utils.stats import format_report, sweep_summary

logger = logging.getLogger("ZonalStab.CLI")


# --- argument parsing helpers ---

def parse_omega_range(text: str) -> np.ndarray:
    """'start:stop:step' (inclusive), 'a,b,c' or a single value."""
    text = str(text)
    try:
        if ":" in text:
            parts = [float(p) for p in text.split(":")]
            if len(parts) != 3:
                raise ValueError("expected start:stop:step")
            return omega_grid(*parts)
        values = np.array([float(p) for p in text.split(",") if p.strip()])
    except ValueError as e:
        raise ConfigError(f"bad Omega specification '{text}': {e}") from e
    if len(values) == 0:
        raise ConfigError("empty Omega specification")
    return values


def parse_int_list(text: str) -> List[int]:
    """'25,50,100' or 'start:stop:step'."""
    text = str(text)
    try:
        if ":" in text:
            start, stop, step = (int(p) for p in text.split(":"))
            if step <= 0 or stop < start:
                raise ValueError("need step > 0 and stop >= start")
            return list(range(start, stop + 1, step))
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as e:
        raise ConfigError(f"bad integer list '{text}': {e}") from e


def _param(run: RunConfig, name: str, default=None):
    value = run.parameters.get(name)
    return default if value is None else value


def _output_path(run: RunConfig, default_name: str) -> str:
    out = run.parameters.get("out")
    if out:
        return out
    return os.path.join(run.output.directory, default_name)


def _svg_path(run: RunConfig, csv_path: str) -> Optional[str]:
    svg = run.parameters.get("svg")
    if svg:
        return svg
    if run.output.plots:
        return os.path.splitext(csv_path)[0] + ".svg"
    return None


def build_model(run: RunConfig, omega: float = 0.0) -> ZonalModel:
    f_coeffs = run.parameters.get("f_coeffs")
    if f_coeffs:
        try:
            coeffs = [float(c) for c in str(f_coeffs).split(",")]
        except ValueError as e:
            raise ConfigError(f"bad --f-coeffs '{f_coeffs}': {e}") from e
        return general_zonal(coeffs, omega=omega)
    name = run.parameters.get("model")
    if not name:
        raise ConfigError("a model is required: --model p<nu> or --f-coeffs")
    try:
        return model_from_name(name, alpha=run.operators.alpha, omega=omega)
    except ValueError as e:
        raise ConfigError(str(e)) from e


def _sector(run: RunConfig) -> int:
    k = _param(run, "k")
    if k is None or k < 1:
        raise ConfigError(f"--k must be >= 1, got {k}")
    return int(k)


def _truncation(run: RunConfig) -> int:
    n = int(_param(run, "n", run.spectra.N))
    if n < 1:
        raise ConfigError(f"--n must be >= 1, got {n}")
    return n


def _profile(run: RunConfig):
    path = run.parameters.get("profile")
    if path:
        return load_profile_csv(path)
    a = float(_param(run, "ellipsoid", 1.0))
    if a <= 0:
        raise ConfigError(f"--ellipsoid must be > 0, got {a}")
    return ellipsoid_profile(a)


def _scan(run: RunConfig) -> np.ndarray:
    """--omega if given, else the configured 0 .. omega_max grid."""
    text = run.parameters.get("omega")
    return parse_omega_range(text) if text is not None else default_scan(run.spectra)


def _eig_columns(count: int) -> List[str]:
    columns = []
    for i in range(1, count + 1):
        columns += [f"eig{i}_re", f"eig{i}_im"]
    return columns


# --- subcommands ---

def cmd_sweep(run: RunConfig) -> CommandResult:
    model = build_model(run)
    k, N = _sector(run), _truncation(run)
    omegas = parse_omega_range(_param(run, "omega", "0:3:0.05"))
    records = omega_sweep(model, k, omegas, N, run.spectra)

    path = _output_path(run, "sweep.csv")
    top = run.spectra.top_count
    journal = ResultJournal(path, ["Omega", "max_imag", "unstable_count", "status"] + _eig_columns(top))
    for rec in records:
        eigs = []
        for i in range(top):
            if i < len(rec.top_eigenvalues):
                eigs += [rec.top_eigenvalues[i].real, rec.top_eigenvalues[i].imag]
            else:
                eigs += [None, None]
        journal.log_row([rec.omega, rec.max_imag, rec.unstable_count, rec.status] + eigs)

    outputs = [path]
    svg = _svg_path(run, path)
    if svg:
        plot_curve(svg, [r.omega for r in records], [r.max_imag for r in records],
                   title=f"{model.label} on V_{k}, N={N}", xlabel="Omega", ylabel="max Im",
                   log_y=run.output.log_y)
        outputs.append(svg)

    summary = sweep_summary(records)
    return CommandResult(outputs=outputs, results=summary, exit_code=3 if summary["failed_points"] else 0)


def cmd_nconv(run: RunConfig) -> CommandResult:
    model = build_model(run)
    k = _sector(run)
    omega = float(_param(run, "omega", 0.0))
    n_list = parse_int_list(_param(run, "n_list", "25:400:25"))
    records = n_convergence(model, k, omega, n_list, run.spectra)

    path = _output_path(run, "nconv.csv")
    journal = ResultJournal(path, ["N", "max_imag", "unstable_count", "delta", "converged", "status"])
    journal.log_rows([r.N, r.max_imag, r.unstable_count, r.delta, r.converged, r.status] for r in records)

    outputs = [path]
    svg = _svg_path(run, path)
    if svg:
        plot_curve(svg, [r.N for r in records], [r.max_imag for r in records],
                   title=f"{model.label} on V_{k}, Omega={omega:g}", xlabel="N", ylabel="max Im")
        outputs.append(svg)
    failed = sum(1 for r in records if r.status not in ("ok", "guarded"))
    return CommandResult(
        outputs=outputs,
        results={"converged_from": converged_from(records), "final_max_imag": records[-1].max_imag},
        exit_code=3 if failed else 0,
    )


def cmd_threshold(run: RunConfig) -> CommandResult:
    model = build_model(run)
    k, N = _sector(run), _truncation(run)
    omegas = _scan(run)
    result = threshold(model, k, omegas, N, _param(run, "tol", run.spectra.tol_omega), run.spectra)

    payload = result.as_dict()
    payload["rayleigh_bound"] = rayleigh_bound(model)
    payload["arnold_bound"] = arnold_bound(model)
    if model.nu is not None:
        payload["within_band"] = within_band(model.nu, k, result.omega_star)
    path = _output_path(run, "threshold.json")
    write_json(path, payload)
    return CommandResult(outputs=[path], results={"omega_star": result.omega_star, "reference": result.reference})


def cmd_criteria(run: RunConfig) -> CommandResult:
    omega = float(_param(run, "omega", 0.0))
    model = build_model(run, omega=omega)
    geometry = None
    if run.parameters.get("profile") or _param(run, "ellipsoid", 1.0) != 1.0:
        profile = _profile(run)
        geometry = xi(profile, uniform_grid(profile, run.geometry.grid_points))
        model = model.with_geometry(geometry)
    grid = default_grid(run.operators.grid_points)
    a = model.A(grid) * np.ones_like(grid)
    k_grid = np.linspace(a.min() - 1.0, a.max() + 1.0, run.operators.k_points)
    report = check_criteria(model, geometry, grid, k_grid, k=run.parameters.get("k"))

    payload = report.as_dict()
    payload["guard_detail"] = report.guard.detail if report.guard else None
    payload["rayleigh_bound"] = rayleigh_bound(model, grid)
    payload["arnold_bound"] = arnold_bound(model, geometry, grid)
    path = _output_path(run, "criteria.json")
    write_json(path, payload)
    return CommandResult(outputs=[path], results={key: payload[key] for key in ("rayleigh", "fjortoft", "arnold_stable", "guard")})


def cmd_geometry(run: RunConfig) -> CommandResult:
    profile = _profile(run)
    count = int(_param(run, "grid", run.geometry.grid_points))
    geometry = xi(profile, uniform_grid(profile, count))

    path = _output_path(run, "geometry.csv")
    journal = ResultJournal(path, ["x3", "chi", "xi", "dchi", "dxi"])
    journal.log_rows(zip(geometry.x, geometry.chi, geometry.xi, geometry.dchi, geometry.dxi))
    return CommandResult(outputs=[path], results={"kind": profile.kind, "a": profile.a,
                                                  "total_area": geometry.total_area})


def _initial_state(run: RunConfig):
    """
    (start, L, dt, T, omegas, sample_every) from --fixture or --stationary. For
    --stationary, start is a factory Omega -> field, since the non-zonal
    stationary state depends on the rotation rate.
    """
    dyn = run.dynamics
    kind = run.parameters.get("stationary")
    if kind:
        L = int(_param(run, "L", dyn.L))
        omega = float(_param(run, "omega", 0.0))
        start = functools.partial(stationary_fixture, kind, L, k=int(_param(run, "stationary_k", 2)))
        return start, L, float(_param(run, "dt", dyn.dt)), float(_param(run, "T", dyn.T)), [omega], \
            int(_param(run, "sample_every", dyn.sample_every))
    fixture = resolve_fixture(str(_param(run, "fixture", "canonical")))
    spec = parse_initial_data(fixture)
    return (initial_field(spec), spec.L, float(_param(run, "dt", spec.dt)), float(_param(run, "T", spec.T)),
            list(spec.omegas), int(_param(run, "sample_every", spec.sample_every)))


def cmd_evolve(run: RunConfig) -> CommandResult:
    start, L, dt, T, omegas, sample_every = _initial_state(run)
    omega = float(_param(run, "omega", omegas[0]))
    w0 = start(omega=omega) if callable(start) else start
    config = replace(run.dynamics, L=L, nlat=run.basis.nlat, nlon=run.basis.nlon)
    trajectory = evolve(w0, omega, T, dt, sample_every, config)

    path = _output_path(run, "ledger.csv")
    journal = ResultJournal(path, list(LEDGER_COLUMNS))
    journal.log_rows(entry.row() for entry in trajectory.ledger)
    drift = {}
    for name in ("energy", "xi_moment", "casimir2"):
        try:
            drift[f"{name}_drift"] = trajectory.drift(name)
        except ValueError:
            drift[f"{name}_drift"] = None
    drift["final_dt"] = trajectory.dt
    return CommandResult(outputs=[path], results=drift)


def cmd_timeavg(run: RunConfig) -> CommandResult:
    start, L, dt, T, omegas, sample_every = _initial_state(run)
    if run.parameters.get("omegas"):
        omegas = [float(w) for w in str(run.parameters["omegas"]).split(",") if w.strip()]
    config = replace(run.dynamics, L=L, nlat=run.basis.nlat, nlon=run.basis.nlon, workers=run.system.workers)
    result = omega_decay(start, omegas, T, dt, sample_every, config)

    path = _output_path(run, "timeavg.csv")
    journal = ResultJournal(path, ["Omega", "weak_norm", "fitted_slope"])
    journal.log_rows((omega, norm, result.slope) for omega, norm in zip(result.omegas, result.norms))
    print(f"fitted log-log slope: {result.slope:.6f}")
    return CommandResult(outputs=[path], results={"slope": result.slope, "order": result.order})


def cmd_propagate(run: RunConfig) -> CommandResult:
    omega = float(_param(run, "omega", 0.0))
    model = build_model(run, omega=omega)
    k, N = _sector(run), _truncation(run)
    op = sector_operator(model, k, N)
    generator = _param(run, "generator", "gamma")
    matrix = sector_generator(op) if generator == "gamma" else op.entries
    times = [float(t) for t in str(_param(run, "times", "0,1,5,25,50")).split(",")]
    v0 = basis_vector(N, int(_param(run, "index", 0)))
    norms = propagator_growth(matrix, v0, times)

    path = _output_path(run, "propagate.csv")
    journal = ResultJournal(path, ["t", "norm"])
    journal.log_rows(zip(times, norms))
    return CommandResult(outputs=[path], results={"final_norm": float(norms[-1])})


def cmd_export(run: RunConfig) -> CommandResult:
    omega = float(_param(run, "omega", 0.0))
    model = build_model(run, omega=omega)
    op = sector_operator(model, _sector(run), _truncation(run))
    path = _output_path(run, "matrix.txt")
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    export_matrix(op, path)
    return CommandResult(outputs=[path], results={"N": op.N, "frobenius_norm": op.frobenius_norm})


def cmd_reproduce(run: RunConfig) -> CommandResult:
    """All published thresholds plus the N-convergence cases, with a summary report."""
    N = _truncation(run)
    omegas = _scan(run)
    n_list = parse_int_list(_param(run, "n_list", "50,100,200,400"))
    alpha = run.operators.alpha
    directory = run.parameters.get("out") or run.output.directory

    thresholds_path = os.path.join(directory, "reproduce_thresholds.csv")
    t_journal = ResultJournal(thresholds_path, ["nu", "k", "omega_star", "reference", "reference_value",
                                                "within_band", "rayleigh_bound", "arnold_bound"])
    report = {}
    out_of_band = 0
    for (nu, k) in sorted(REFERENCE_THRESHOLDS):
        model = legendre_model(nu, alpha=alpha)
        result = threshold(model, k, omegas, N, run.spectra.tol_omega, run.spectra)
        band = within_band(nu, k, result.omega_star)
        out_of_band += 0 if band else 1
        t_journal.log_row([nu, k, result.omega_star, result.reference, result.reference_value, band,
                           rayleigh_bound(model), arnold_bound(model)])
        report[f"P{nu}(V{k}) threshold"] = {"omega_star": result.omega_star, "closest": result.reference,
                                            "within_band": band}

    nconv_path = os.path.join(directory, "reproduce_nconv.csv")
    n_journal = ResultJournal(nconv_path, ["nu", "k", "Omega", "N", "max_imag", "delta", "converged"])
    plot = SvgLinePlot(title="N-convergence", xlabel="N", ylabel="max Im")
    for nu, k, omega in CONVERGENCE_CASES:
        records = n_convergence(legendre_model(nu, alpha=alpha), k, omega, n_list, run.spectra)
        n_journal.log_rows([nu, k, omega, r.N, r.max_imag, r.delta, r.converged] for r in records)
        plot.add_series([r.N for r in records], [r.max_imag for r in records], f"P{nu}V{k} Omega={omega:g}")
        report[f"P{nu}(V{k}) Omega={omega:g} convergence"] = {
            "converged_from": converged_from(records), "final_max_imag": records[-1].max_imag,
        }

    outputs = [thresholds_path, nconv_path]
    if run.output.plots:
        svg = os.path.join(directory, "reproduce_nconv.svg")
        plot.save(svg)
        outputs.append(svg)
    print(format_report(f"Reproduction summary (N={N})", report))
    return CommandResult(outputs=outputs, results={"out_of_band": out_of_band})


COMMANDS = {
    "sweep": cmd_sweep,
    "nconv": cmd_nconv,
    "threshold": cmd_threshold,
    "criteria": cmd_criteria,
    "geometry": cmd_geometry,
    "evolve": cmd_evolve,
    "timeavg": cmd_timeavg,
    "propagate": cmd_propagate,
    "export": cmd_export,
    "reproduce": cmd_reproduce,
}
