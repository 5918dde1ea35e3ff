"""
Exact trigonometric (Fourier) expansion of a single-Pauli loss.

Every term is a monomial prod_{k in C} cos(phi_k) * prod_{k in S} sin(phi_k)
with disjoint angle sets C and S, packed as bit masks over parameter indices.
"""
import math
from collections import Counter
from dataclasses import dataclass

from app.features.circuit_model.models import CliffordPoint, ParamPoint


@dataclass(frozen=True, slots=True)
class FourierTerm:
    cos_mask: int
    sin_mask: int
    coefficient: float

    @property
    def level(self) -> int:
        """Number of angles the monomial depends on."""
        return (self.cos_mask | self.sin_mask).bit_count()

    def signature(self, m: int) -> tuple[str, ...]:
        """Per-angle symbol: "1", "cos" or "sin"."""
        return tuple(
            "cos" if (self.cos_mask >> k) & 1 else "sin" if (self.sin_mask >> k) & 1 else "1"
            for k in range(m)
        )

    def value(self, cosines: list[float], sines: list[float]) -> float:
        result = self.coefficient
        mask = self.cos_mask
        while mask:
            low = mask & -mask
            result *= cosines[low.bit_length() - 1]
            mask ^= low
        mask = self.sin_mask
        while mask:
            low = mask & -mask
            result *= sines[low.bit_length() - 1]
            mask ^= low
        return result


@dataclass(frozen=True, slots=True)
class FourierExpansion:
    """Terms with unique signatures; the constant term is the uniform average of the loss."""
    m: int
    terms: tuple[FourierTerm, ...]

    @property
    def constant(self) -> float:
        for term in self.terms:
            if term.cos_mask == 0 and term.sin_mask == 0:
                return term.coefficient
        return 0.0

    def evaluate(self, point: ParamPoint | CliffordPoint) -> float:
        angles = point.angles
        cosines = [math.cos(a) for a in angles]
        sines = [math.sin(a) for a in angles]
        return math.fsum(term.value(cosines, sines) for term in self.terms)

    def level_counts(self) -> dict[int, int]:
        return dict(sorted(Counter(term.level for term in self.terms).items()))

    def __len__(self) -> int:
        return len(self.terms)
