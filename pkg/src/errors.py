"""
Exception hierarchy for the stability toolkit.
The CLI maps these onto exit codes (2 config, 3 numeric, 4 I/O).
"""


class ZonalStabError(Exception):
    """Base class for every error raised by the package."""


class ConfigError(ZonalStabError, ValueError):
    """Invalid or inconsistent run configuration."""


class DegenerateProfileError(ZonalStabError, ValueError):
    """Surface profile with 4*rho + rho'^2 vanishing at an interior node."""


class TransformError(ZonalStabError, ValueError):
    """Grid shape does not match the spectral truncation."""


class NumericalError(ZonalStabError):
    """A numerical routine failed to deliver its contract."""


class EigenSolverError(NumericalError):
    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class CFLViolationError(NumericalError):
    """Time step still violates the CFL guard after the allowed halvings."""


class PropagatorOverflowError(NumericalError):
    """exp(tM) v0 overflowed for a strongly unstable matrix."""
