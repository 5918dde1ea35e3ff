"""
Pydantic schemas for run configuration, manifests and CSV rows.
"""
from enum import Enum
from typing import Any

from pydantic import Field, field_validator, model_validator

from app.core import config
from app.core.types import Base, FrozenBase, Seed
from app.features.pauli_core.families import FamilyKind


class Experiment(str, Enum):
    variance_scan = "variance_scan"
    exact_minima = "exact_minima"
    random_observable_identity = "random_observable_identity"
    fixtures = "fixtures"
    lemma_checks = "lemma_checks"


class IdentityMode(str, Enum):
    exact = "exact"
    sampled = "sampled"


class RunConfig(FrozenBase):
    """
    One experiment run, flattened from the TOML sections
    [run], [grid], [sampling], [engine] and [tolerances].
    """
    # [run]
    experiment: Experiment
    seed: Seed = Field(..., description="Master seed; mandatory, never taken from the clock")
    out_dir: str = Field("results", description="Output directory")
    threads: int = Field(config.DEFAULT_THREADS, ge=1, description="Worker threads for cell fan-out")

    # [grid]
    n: list[int] = Field(..., min_length=1, description="Qubit counts")
    layers: list[int] = Field([1], min_length=1, description="Brickwork layer counts")
    family: FamilyKind = Field(FamilyKind.weight2_nn, description="Pauli family; exact_minima defaults to weight2_all")
    trials: int = Field(10, ge=1, description="Trials per qubit count (exact_minima)")

    # [sampling]
    samples: int = Field(50, ge=2, description="Points per variance mode")
    verification_samples: int = Field(10, ge=1, description="Uniform completions per exact-zero check")
    identity_mode: IdentityMode = IdentityMode.exact
    identity_pairs: int = Field(20000, ge=2, description="(Pauli, Clifford point) pairs in sampled identity mode")
    random_circuits: int = Field(20, ge=1, description="Random circuits per lemma check")
    stage_cap: int = Field(64, ge=0, description="Maximum greedy stages per trial")

    # [engine]
    stabilizer_state: str = "zero"
    statevector_max_qubits: int = Field(14, ge=1)
    pauliprop_max_terms: int = Field(2**20, ge=1)
    clifford_enumeration_max_params: int = Field(10, ge=0)
    hessian_cap: int = Field(128, ge=0)

    # [tolerances]
    zero_tolerance: float = Field(1e-12, gt=0.0)
    variance_log2_tolerance: float = Field(1.6, gt=0.0, description="Allowed |log2 variance + n|")
    bp_variance_ratio: float = Field(4.0, gt=0.0, description="Minimum variance ratio for the fixture without a plateau")

    @model_validator(mode="before")
    @classmethod
    def _family_default(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("family") is None and data.get("experiment") == Experiment.exact_minima:
            return data | {"family": FamilyKind.weight2_all}
        return data

    @field_validator("n", "layers")
    @classmethod
    def _positive(cls, values: list[int]) -> list[int]:
        if any(v < 1 for v in values):
            raise ValueError("grid values must be positive")
        return values


class RunManifest(Base):
    run_id: str = Field(..., description="ULID of the run")
    version: str
    experiment: Experiment
    config: dict[str, Any] = Field(..., description="Echo of the validated run configuration")
    derived: dict[str, Any] = Field(default_factory=dict, description="Budgets and constants computed for this run")
    wall_time_seconds: float = Field(..., ge=0.0)
    files: dict[str, str] = Field(default_factory=dict, description="File name to SHA-256 hex digest")


class CsvTable(Base):
    """A CSV file body: schema tag, header and rows in output order."""
    name: str
    schema_name: str
    schema_version: int = 1
    header: list[str]
    rows: list[list[Any]] = []
