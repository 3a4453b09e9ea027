"""Experiment plans and the YAML project configuration."""

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np
import yaml
from pydantic import BaseModel, ConfigDict, Field, model_validator

from lrmipt.circuit import CircuitConfig, MeasurementScheme
from lrmipt.errors import PlanError
from lrmipt.observables import Observable
from lrmipt.scaling import CollapseForm, SearchGrid

DEFAULT_OUTPUT_DIR = "results"


class GridSpec(BaseModel):
    """Inclusive ``start … stop`` grid with spacing ``step`` (values rounded to 10 decimals)."""

    model_config = ConfigDict(extra="forbid")

    start: float
    stop: float
    step: float = Field(gt=0)

    @model_validator(mode="after")
    def _ordered(self) -> "GridSpec":
        if self.stop < self.start:
            raise ValueError("grid stop must not be below start")
        return self

    def values(self) -> List[float]:
        count = int(np.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [round(self.start + k * self.step, 10) for k in range(count)]


Sweep = Union[List[float], GridSpec]


def sweep_values(sweep: Sweep) -> List[float]:
    return sweep.values() if isinstance(sweep, GridSpec) else [float(v) for v in sweep]


@dataclass(frozen=True)
class Cell:
    L: int
    alpha: float
    p: float
    observable: Observable

    @property
    def filename(self) -> str:
        return f"{self.observable.value}_L{self.L}_a{self.alpha:g}_p{self.p:.6g}.csv"


class ExperimentPlan(BaseModel):
    """
    A sweep over ``(L, alpha, p, observable)`` cells; each cell becomes one CSV file.

    - depth: run length as a multiple of ``L`` (time steps = depth · L)
    - depth_cap: purification cutoff in steps, default ``16 L``
    - sample_times: S(t) recording times, default every ``L/8`` steps
    """

    model_config = ConfigDict(extra="forbid")

    L: List[int]
    alpha: Sweep
    p: Sweep
    observables: List[Observable] = [Observable.HALF_CHAIN]
    n: int = Field(default=100, ge=0)
    depth: int = Field(default=32, ge=1)
    depth_cap: Optional[int] = Field(default=None, ge=1)
    gates_per_layer: Optional[int] = Field(default=None, ge=1)
    measurement_scheme: MeasurementScheme = MeasurementScheme.FIXED_COUNT
    region_denominator: int = Field(default=8, ge=2)
    sample_times: Optional[List[int]] = None
    seed: int = Field(default=0, ge=0, lt=2**64)
    workers: int = Field(default=1, ge=1)
    output_dir: str = DEFAULT_OUTPUT_DIR

    def cells(self) -> List[Cell]:
        return [
            Cell(int(L), float(a), float(p), obs)
            for obs in self.observables
            for L in self.L
            for a in sweep_values(self.alpha)
            for p in sweep_values(self.p)
        ]

    def validate_cells(self) -> List[Cell]:
        """All cells, or ``PlanError`` naming every offending value."""
        offenders = []
        for L in self.L:
            if L < 4:
                offenders.append(f"L={L} (must be >= 4)")
            if Observable.MUTUAL_INFORMATION in self.observables and L % self.region_denominator:
                offenders.append(f"L={L} (not divisible by {self.region_denominator} for mutual information)")
        for a in sweep_values(self.alpha):
            if not 0 <= a < float("inf"):
                offenders.append(f"alpha={a} (must be finite and >= 0)")
        for p in sweep_values(self.p):
            if not 0 <= p <= 1:
                offenders.append(f"p={p} (must lie in [0, 1])")
        if self.sample_times is not None:
            for L in self.L:
                bad = [t for t in self.sample_times if not 0 <= t <= self.depth * L]
                if bad:
                    offenders.append(f"sample_times {bad} outside [0, {self.depth * L}] at L={L}")
        cells = self.cells()
        names = [c.filename for c in cells]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        offenders.extend(f"duplicate cell {n}" for n in duplicates)
        if offenders:
            raise PlanError(offenders)
        return cells

    def circuit_config(self, cell: Cell) -> CircuitConfig:
        return CircuitConfig(
            L=cell.L,
            alpha=cell.alpha,
            p=cell.p,
            depth=self.depth,
            gates_per_layer=self.gates_per_layer,
            measurement_scheme=self.measurement_scheme,
            seed=self.seed,
        )

    def config_hash(self) -> str:
        canonical = json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


# ----------------------------------------------------------------------
# Analysis settings
# ----------------------------------------------------------------------


class GridSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    p_c: Tuple[float, float] = (0.05, 0.5)
    nu: Tuple[float, float] = (0.7, 3.0)
    exponent: Tuple[float, float] = (0.0, 2.0)
    points: int = Field(default=5, ge=2)
    n_starts: int = Field(default=8, ge=1)

    def to_grid(self) -> SearchGrid:
        return SearchGrid(self.p_c, self.nu, self.exponent, self.points, self.n_starts)


class CollapseSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    inputs: List[str] = []
    form: CollapseForm = CollapseForm.TAU_P
    alpha: Optional[float] = None
    n_boot: int = Field(default=0, ge=0)
    subsample: Optional[int] = Field(default=None, ge=1)
    seed: int = Field(default=0, ge=0)
    grid: GridSettings = GridSettings()


class PowerFitSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    inputs: List[str] = []
    L_min: Optional[int] = Field(default=None, ge=1)


class CrossingsSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    L: List[int] = [64, 128, 256, 512, 1024, 2048, 4096]
    alpha: Sweep = GridSpec(start=1.0, stop=4.0, step=0.25)
    gates_per_layer: Optional[int] = Field(default=None, ge=1)


class HeffScanSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    L: int = Field(default=12, ge=2)
    alpha: float = Field(default=2.0, gt=1.0)
    J: float = Field(default=1.0, gt=0.0)
    gamma_over_J: Sweep = [0.2, 1.0, 5.0, 20.0]
    sizes: Optional[List[int]] = None


class ProjectConfig(BaseModel):
    """Top-level YAML document: one section per sub-command."""

    model_config = ConfigDict(extra="forbid")

    simulate: Optional[ExperimentPlan] = None
    collapse: CollapseSettings = CollapseSettings()
    powerfit: PowerFitSettings = PowerFitSettings()
    crossings: CrossingsSettings = CrossingsSettings()
    heff_scan: HeffScanSettings = HeffScanSettings()


def load_config(path: Union[str, Path]) -> ProjectConfig:
    with open(path, "r", encoding="utf-8") as infile:
        raw = yaml.safe_load(infile) or {}
    return ProjectConfig.model_validate(raw)


def dump_config(config: ProjectConfig) -> str:
    return yaml.safe_dump(config.model_dump(mode="json"), sort_keys=False)


def write_config(path: Union[str, Path], config: ProjectConfig) -> None:
    with open(path, "w", encoding="utf-8") as outfile:
        outfile.write(dump_config(config))
