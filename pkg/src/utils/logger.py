import logging
import sys

FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def _level(value):
    return value.upper() if isinstance(value, str) else value


def setup_logger(name="ZonalStab", log_level=logging.INFO, log_file=None, levels=None):
    """
    Package logger with a stderr handler and an optional file handler.
    Stage loggers (ZonalStab.Sweep, ZonalStab.Dynamics, ...) propagate to it;
    `levels` maps a stage suffix such as "Sweep" to its own level, so a long
    Omega sweep can stay quiet while the integrator logs at DEBUG.
    """
    logger = logging.getLogger(name)
    logger.setLevel(_level(log_level))
    for child, level in (levels or {}).items():
        logging.getLogger(f"{name}.{child}").setLevel(_level(level))

    if logger.handlers:
        return logger

    formatter = logging.Formatter(fmt=FORMAT, datefmt=DATE_FORMAT)
    # stdout carries reports
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
    return logger
