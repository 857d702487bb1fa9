import copy
import logging
import os

import yaml
from dotenv import load_dotenv

from src.errors import ConfigError

SECTIONS = ("system", "basis", "geometry", "operators", "spectra", "dynamics", "output")


def load_config(config_path="config.yaml", sections=SECTIONS):
    """
    Loads configuration from a YAML file. `sections` lists the accepted
    top-level keys; the CLI adds one per subcommand for flag defaults.
    """
    if not os.path.exists(config_path):
        raise FileNotFoundError(f"Config file not found: {config_path}")

    with open(config_path, "r") as f:
        try:
            config = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            logging.error(f"Error parsing config file: {e}")
            raise ConfigError(f"Malformed YAML in {config_path}: {e}") from e

    if not isinstance(config, dict):
        raise ConfigError(f"Top level of {config_path} must be a mapping")
    unknown = [key for key in config if key not in sections]
    if unknown:
        raise ConfigError(f"Unknown config sections {unknown}; expected a subset of {list(sections)}")
    for section in sections:
        if config.get(section) is None:
            config[section] = {}
        elif not isinstance(config[section], dict):
            raise ConfigError(f"Section '{section}' of {config_path} must be a mapping")
    return config


def load_environment(env_path=".env", config=None):
    """
    Reads ZONALSTAB_* overrides from a .env file (and the process environment)
    and merges them into a copy of config.
    """
    load_dotenv(env_path)
    merged = copy.deepcopy(config) if config else {section: {} for section in SECTIONS}

    workers = os.getenv("ZONALSTAB_WORKERS")
    log_level = os.getenv("ZONALSTAB_LOG_LEVEL")
    output_dir = os.getenv("ZONALSTAB_OUTPUT_DIR")

    if workers:
        try:
            merged.setdefault("system", {})["workers"] = int(workers)
        except ValueError as e:
            raise ConfigError(f"ZONALSTAB_WORKERS must be an integer, got '{workers}'") from e
    if log_level:
        merged.setdefault("system", {})["log_level"] = log_level
    if output_dir:
        merged.setdefault("output", {})["directory"] = output_dir
    return merged


def section_config(config, section, cls, **overrides):
    """Builds the typed dataclass for one section; unknown keys are a config error."""
    values = dict(config.get(section) or {})
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return cls(**values)
    except TypeError as e:
        raise ConfigError(f"Invalid '{section}' section: {e}") from e
