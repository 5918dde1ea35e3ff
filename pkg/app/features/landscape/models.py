"""
Domain types produced by the siloed-minimum search.
"""
from dataclasses import dataclass

from app.features.circuit_model.models import CliffordPoint, SplitPoint
from app.features.pauli_core.basis import SymplecticBasis
from app.features.pauli_core.models import PauliString


@dataclass(frozen=True, slots=True)
class PauliMinimum:
    """A family member reaching -1 at a sampled completion of the free coordinates."""
    pauli: PauliString
    point: CliffordPoint
    sample_index: int


@dataclass(frozen=True, slots=True)
class SearchStage:
    pauli: PauliString
    free_before: frozenset[int]
    free_after: frozenset[int]

    @property
    def ratio(self) -> float:
        return len(self.free_after) / len(self.free_before) if self.free_before else 0.0


@dataclass(frozen=True, slots=True)
class CriticalPoint:
    """
    A Clifford point whose fixed coordinates pin every optimized Pauli at -1.

    Every optimized loss is constant over the free coordinates, so any
    completion of them keeps all of it at the minimum.
    """
    split: SplitPoint
    optimized: tuple[PauliString, ...]
    basis: SymplecticBasis
    history: tuple[SearchStage, ...]
    # optimized Paulis that reached -1 while leaving every free direction null
    absorbed: tuple[PauliString, ...] = ()

    @property
    def free_indices(self) -> frozenset[int]:
        return self.split.free_indices

    @property
    def fixed_indices(self) -> frozenset[int]:
        return self.split.fixed_indices

