"""
CLI package - subcommands behind main.py.
"""
from src.cli.commands import COMMANDS, parse_int_list, parse_omega_range
from src.cli.models import CommandResult, RunConfig

__all__ = ["COMMANDS", "parse_int_list", "parse_omega_range", "CommandResult", "RunConfig"]
