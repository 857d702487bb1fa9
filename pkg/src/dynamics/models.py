"""
Dynamics - Data Models
Invariant ledgers, trajectories and experiment inputs for the vorticity integrator.
"""
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from src.models import SpectralField

LEDGER_COLUMNS = ("time", "energy", "xi_moment", "casimir2", "sup_q")


@dataclass(frozen=True)
class InvariantLedger:
    time: float
    energy: float       # ||grad f||^2
    xi_moment: float    # integral of x3 * w
    casimir2: float     # integral of (w - Omega chi)^2
    sup_q: float        # max grid |w - Omega chi|

    def row(self) -> list:
        return [self.time, self.energy, self.xi_moment, self.casimir2, self.sup_q]


@dataclass
class Trajectory:
    omega: float
    dt: float
    times: List[float] = field(default_factory=list)
    states: List[SpectralField] = field(default_factory=list)
    ledger: List[InvariantLedger] = field(default_factory=list)

    def record(self, t: float, state: SpectralField, entry: InvariantLedger):
        self.times.append(float(t))
        self.states.append(state)
        self.ledger.append(entry)

    @property
    def final(self) -> SpectralField:
        return self.states[-1]

    def series(self, name: str) -> np.ndarray:
        return np.array([getattr(e, name) for e in self.ledger])

    def drift(self, name: str) -> float:
        """max |v(t) - v(0)| / |v(0)| over the samples."""
        values = self.series(name)
        base = abs(values[0])
        if base == 0.0:
            raise ValueError(f"relative drift of {name} undefined: initial value is 0")
        return float(np.max(np.abs(values - values[0])) / base)


@dataclass(frozen=True)
class InitialDataSpec:
    L: int
    dt: float
    T: float
    omegas: Tuple[float, ...]
    modes: Tuple[Tuple[int, int, float, float], ...]   # (l, m, re, im), m >= 0
    sample_every: int = 10


@dataclass(frozen=True)
class DecayResult:
    omegas: Tuple[float, ...]
    norms: Tuple[float, ...]
    slope: float
    order: float = 3.0
