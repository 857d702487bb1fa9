"""
Spectra - Data Models
Results of N-convergence studies and threshold searches.
"""
from dataclasses import dataclass, field
from typing import Optional, Tuple

from src.models import SweepRecord


@dataclass(frozen=True)
class ConvergenceRecord:
    N: int
    max_imag: float
    unstable_count: int
    delta: Optional[float]      # |max_imag(N) - max_imag(previous N)|
    converged: bool
    status: str = "ok"


@dataclass(frozen=True)
class BisectionStep:
    omega: float
    max_imag: float
    unstable: bool
    status: str = "ok"


@dataclass
class ThresholdResult:
    """Omega_star: stable-side end of the last unstable-to-stable crossing."""
    omega_star: float
    bracket: Tuple[float, float]
    history: Tuple[BisectionStep, ...] = field(default_factory=tuple)
    scan: Tuple[SweepRecord, ...] = field(default_factory=tuple)
    degenerate: bool = False          # no instability anywhere on the scanned range
    unstable_at_end: bool = False     # still unstable at the range end
    reference: Optional[str] = None   # which published value Omega_star is closest to
    reference_value: Optional[float] = None

    def as_dict(self) -> dict:
        return {
            "omega_star": self.omega_star,
            "bracket": list(self.bracket),
            "degenerate": self.degenerate,
            "unstable_at_end": self.unstable_at_end,
            "reference": self.reference,
            "reference_value": self.reference_value,
            "bisection": [
                {"omega": s.omega, "max_imag": s.max_imag, "unstable": s.unstable, "status": s.status} for s in self.history
            ],
        }
