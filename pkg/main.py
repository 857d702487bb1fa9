import argparse
import logging
import os
import sys

from src.cli.commands import COMMANDS
from src.cli.models import (
    BasisConfig,
    GeometryConfig,
    OperatorsConfig,
    OutputConfig,
    RunConfig,
    SystemConfig,
)
from src.dynamics.integrator import DynamicsConfig
from src.errors import ConfigError, NumericalError
from src.spectra.sweep import SpectraConfig
from src.utils.config_loader import SECTIONS, load_config, load_environment, section_config
from src.utils.journal import write_json
from src.utils.logger import setup_logger

EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


def _model_args(p, omega_help="Omega value"):
    p.add_argument("--model", type=str, help="Legendre flow p<nu>, e.g. p3")
    p.add_argument("--f-coeffs", dest="f_coeffs", type=str, help="general zonal f(x3), ascending coefficients")
    p.add_argument("--alpha", type=float, help="amplitude of the Legendre flow")
    p.add_argument("--k", type=int, help="azimuthal sector k >= 1")
    p.add_argument("--n", type=int, help="truncation size N")
    p.add_argument("--omega", type=str, help=omega_help)


def build_parser():
    parser = argparse.ArgumentParser(description="Linear stability of zonal Euler flows on rotating surfaces")
    parser.add_argument("--config", type=str, default="config.yaml", help="Path to config file")
    parser.add_argument("--env", type=str, default=".env", help="Path to .env file")
    parser.add_argument("--workers", type=int, help="parallel worker processes")
    parser.add_argument("--log-level", dest="log_level", type=str, help="logging level")
    parser.add_argument("--output-dir", dest="output_dir", type=str, help="directory for result files")
    parser.add_argument("--plots", action="store_true", help="also write SVG plots")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="eigenvalue sweep over Omega")
    _model_args(p, "Omega range start:stop:step (inclusive) or list")
    p.add_argument("--out", type=str)
    p.add_argument("--svg", type=str)
    p.add_argument("--linear-y", dest="linear_y", action="store_true", help="linear ordinate in the plot")

    p = sub.add_parser("nconv", help="max_imag against the truncation size")
    _model_args(p)
    p.add_argument("--n-list", dest="n_list", type=str, help="N values, '25,50' or '25:400:25'")
    p.add_argument("--out", type=str)
    p.add_argument("--svg", type=str)

    p = sub.add_parser("threshold", help="stability threshold by scan and bisection")
    _model_args(p, "scanned Omega range start:stop:step")
    p.add_argument("--tol", type=float, help="bisection tolerance in Omega")
    p.add_argument("--out", type=str)

    p = sub.add_parser("criteria", help="Rayleigh, Fjortoft, Arnold and guard checks")
    _model_args(p)
    p.add_argument("--ellipsoid", type=float, help="ellipsoid pole height a")
    p.add_argument("--profile", type=str, help="tabulated (x3, rho) CSV")
    p.add_argument("--out", type=str)

    p = sub.add_parser("geometry", help="tabulate chi, xi and derivatives")
    p.add_argument("--ellipsoid", type=float, help="ellipsoid pole height a")
    p.add_argument("--profile", type=str, help="tabulated (x3, rho) CSV")
    p.add_argument("--grid", type=int, help="number of grid points")
    p.add_argument("--out", type=str)

    for name, text in (("evolve", "integrate the vorticity equation"),
                       ("timeavg", "Omega-decay of time-averaged non-zonal part")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--fixture", type=str, help="initial-data file or 'canonical'")
        p.add_argument("--stationary", type=str, choices=["zonal", "nonzonal"], help="start from a stationary state")
        p.add_argument("--stationary-k", dest="stationary_k", type=int, help="degree of the non-zonal harmonic")
        p.add_argument("--L", dest="L", type=int, help="triangular truncation")
        p.add_argument("--dt", type=float)
        p.add_argument("--T", dest="T", type=float)
        p.add_argument("--sample-every", dest="sample_every", type=int)
        p.add_argument("--omega", type=str)
        p.add_argument("--omegas", type=str, help="comma-separated Omega list")
        p.add_argument("--out", type=str)

    p = sub.add_parser("propagate", help="norms of exp(tM) v0")
    _model_args(p)
    p.add_argument("--times", type=str, help="comma-separated ascending times")
    p.add_argument("--index", type=int, help="basis vector index of v0")
    p.add_argument("--generator", type=str, choices=["M", "gamma"], help="Gamma_k = i k M_k (default) or M_k")
    p.add_argument("--out", type=str)

    p = sub.add_parser("export", help="write a sector operator as a plain-text matrix")
    _model_args(p)
    p.add_argument("--out", type=str)

    p = sub.add_parser("reproduce", help="all published thresholds and convergence cases")
    p.add_argument("--n", type=int)
    p.add_argument("--omega", type=str, help="scanned Omega range")
    p.add_argument("--n-list", dest="n_list", type=str)
    p.add_argument("--alpha", type=float)
    p.add_argument("--out", type=str, help="output directory")
    return parser


GLOBAL_FLAGS = ("config", "env", "workers", "log_level", "output_dir", "plots", "command", "linear_y")


def _command_defaults(config, command, parameters) -> dict:
    """Flag defaults from the per-command section; flags given on the command line win."""
    defaults = config.get(command) or {}
    unknown = sorted(key for key in defaults if key not in parameters)
    if unknown:
        raise ConfigError(f"Unknown keys {unknown} in the '{command}' section; expected a subset of {sorted(parameters)}")
    merged = dict(parameters)
    for key, value in defaults.items():
        if merged[key] is not None or value is None:
            continue
        if isinstance(value, dict):
            raise ConfigError(f"'{command}.{key}' must be a scalar or a list, got a mapping")
        merged[key] = ",".join(str(v) for v in value) if isinstance(value, list) else value
    return merged


def resolve_run(args, config) -> RunConfig:
    """YAML < environment < flags."""
    parameters = {key: value for key, value in vars(args).items() if key not in GLOBAL_FLAGS}
    parameters = _command_defaults(config, args.command, parameters)
    system = section_config(config, "system", SystemConfig, workers=args.workers, log_level=args.log_level)
    spectra = section_config(config, "spectra", SpectraConfig, workers=system.workers)
    dynamics = section_config(config, "dynamics", DynamicsConfig, workers=system.workers)
    output = section_config(config, "output", OutputConfig, directory=args.output_dir)
    if args.plots:
        output.plots = True
    if getattr(args, "linear_y", False):
        output.log_y = False
    operators = section_config(config, "operators", OperatorsConfig, alpha=parameters.get("alpha"))

    return RunConfig(
        command=args.command,
        parameters=parameters,
        system=system,
        basis=section_config(config, "basis", BasisConfig),
        geometry=section_config(config, "geometry", GeometryConfig),
        operators=operators,
        spectra=spectra,
        dynamics=dynamics,
        output=output,
    )


def _manifest_path(run: RunConfig, outputs) -> str:
    if outputs:
        return os.path.splitext(outputs[0])[0] + ".manifest.json"
    return os.path.join(run.output.directory, f"{run.command}.manifest.json")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        if os.path.exists(args.config):
            config = load_config(args.config, SECTIONS + tuple(COMMANDS))
        else:
            config = {s: {} for s in SECTIONS}
        config = load_environment(args.env, config)
        run = resolve_run(args, config)
    except ConfigError as e:
        logging.getLogger("ZonalStab.CLI").error(f"Configuration error: {e}")
        return EXIT_CONFIG

    logger = setup_logger(log_level=run.system.log_level, log_file=run.system.log_file,
                          levels=run.system.log_levels)
    logger.info(f"Running '{run.command}' with config: {args.config} and env: {args.env}")

    try:
        result = COMMANDS[run.command](run)
        manifest = run.manifest()
        manifest["outputs"] = result.outputs
        manifest["results"] = result.results
        write_json(_manifest_path(run, result.outputs), manifest)
    except NumericalError as e:
        logger.error(f"Numerical failure: {e}")
        return EXIT_NUMERIC
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_IO
    except ValueError as e:
        # ConfigError and the precondition errors of the library are ValueErrors
        logger.error(f"Invalid parameters: {e}")
        return EXIT_CONFIG

    if result.exit_code:
        logger.warning(f"'{run.command}' finished with exit code {result.exit_code}")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
