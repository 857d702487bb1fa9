"""
CLI - Data Models
Typed config sections and the resolved run configuration recorded in manifests.
"""
from dataclasses import asdict, dataclass, field
from typing import Optional

from src.dynamics.integrator import DynamicsConfig
from src.spectra.sweep import SpectraConfig
from src.version import __version__


@dataclass
class SystemConfig:
    log_level: str = "INFO"
    workers: int = 1
    log_file: Optional[str] = None
    log_levels: Optional[dict] = None   # per stage, e.g. {"Sweep": "WARNING"}


@dataclass
class BasisConfig:
    nlat: Optional[int] = None    # transform grid overrides; None picks the 3L dealiasing minimum
    nlon: Optional[int] = None


@dataclass
class GeometryConfig:
    grid_points: int = 201


@dataclass
class OperatorsConfig:
    alpha: float = 1.0
    grid_points: int = 4001
    k_points: int = 2001


@dataclass
class OutputConfig:
    directory: str = "results"
    plots: bool = False
    log_y: bool = True


@dataclass
class RunConfig:
    command: str
    parameters: dict
    system: SystemConfig = field(default_factory=SystemConfig)
    basis: BasisConfig = field(default_factory=BasisConfig)
    geometry: GeometryConfig = field(default_factory=GeometryConfig)
    operators: OperatorsConfig = field(default_factory=OperatorsConfig)
    spectra: SpectraConfig = field(default_factory=SpectraConfig)
    dynamics: DynamicsConfig = field(default_factory=DynamicsConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    def manifest(self) -> dict:
        return {
            "command": self.command,
            "version": __version__,
            "parameters": dict(self.parameters),
            "config": {
                "system": asdict(self.system),
                "basis": asdict(self.basis),
                "geometry": asdict(self.geometry),
                "operators": asdict(self.operators),
                "spectra": asdict(self.spectra),
                "dynamics": asdict(self.dynamics),
                "output": asdict(self.output),
            },
        }


@dataclass
class CommandResult:
    outputs: list = field(default_factory=list)
    results: dict = field(default_factory=dict)
    exit_code: int = 0
