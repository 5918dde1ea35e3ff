"""
Pydantic records for search budgets, local-minimum verdicts and trials.
"""
from enum import Enum

from pydantic import Field

from app.core.errors import ConfigError
from app.core.types import Base, PauliLabel, Quarter, Seed


class SearchBudget(Base):
    samples_per_stage: int = Field(..., ge=0, description="Clifford completions tried per stage")
    stage_cap: int = Field(64, ge=0, description="Maximum number of greedy stages")
    verification_samples: int = Field(10, ge=1, description="Uniform completions per exact-zero check")
    seed: Seed

    @classmethod
    def from_formula(cls, n: int, family_size: int, seed: int, **overrides) -> "SearchBudget":
        """floor(30 * 2^n / |family|) samples per stage."""
        if family_size < 1:
            raise ConfigError("family must be non-empty")
        return cls(samples_per_stage=(30 * 2**n) // family_size, seed=seed, **overrides)


class Verdict(str, Enum):
    zero_approx = "zero_approx"
    eps_approx = "eps_approx"
    not_critical = "not_critical"


class ApproxLMReport(Base):
    point: list[Quarter] = Field(..., description="Quarter turns of the checked Clifford point")
    epsilon: float = Field(..., ge=0.0)
    max_abs_gradient: float = Field(..., ge=0.0)
    min_hessian_eigenvalue: float | None = Field(None, description="Only when the Hessian was built")
    components_checked: int = Field(..., ge=0)
    verdict: Verdict


class RemainderVerdict(Base):
    pauli: PauliLabel
    exact_zero: bool
    gradient_vanish_fraction: float | None = None


class TrialRecord(Base):
    """One exact-minimum trial; a trial that optimized nothing has status `no_pauli`."""
    trial: int
    seed: Seed
    n: int
    layers: int
    m: int
    status: str = "ok"
    samples_per_stage: int
    optimized: list[PauliLabel] = []
    absorbed: list[PauliLabel] = []
    stage_free_counts: list[int] = []
    fixed_indices: list[int] = []
    free_indices: list[int] = []
    remainder_size: int = 0
    value_vanish_fraction: float | None = None
    gradient_vanish_fraction: float | None = None
    remainder: list[RemainderVerdict] = []
