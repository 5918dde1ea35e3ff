"""
Pydantic schemas for variance statistics.
"""
from enum import Enum

from pydantic import Field

from app.core.types import Base, PauliLabel


class VarianceMode(str, Enum):
    uniform = "uniform"
    clifford = "clifford"
    clifford_conditioned = "clifford_conditioned"


class VarianceReport(Base):
    """Sample statistics of one single-Pauli loss over sampled parameter points."""
    observable: PauliLabel = Field(..., description="Pauli label of the observable")
    mode: VarianceMode
    sample_count: int = Field(..., ge=0, description="Points the statistics were computed over")
    mean: float | None = None
    variance: float | None = Field(None, ge=0.0, description="Unbiased sample variance")
    variance_excluding_self: float | None = Field(
        None, ge=0.0,
        description="Conditioned mode: variance over points where some other family member is non-zero",
    )
    nonzero_fraction: float | None = Field(None, ge=0.0, le=1.0, description="Clifford modes only")
    status: str = Field("ok", description="ok, or empty when no point survived conditioning")
