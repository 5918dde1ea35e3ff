"""
Constant Clifford gates.
"""
from dataclasses import dataclass
from enum import Enum

from app.core.errors import CircuitError


class GateKind(str, Enum):
    H = "H"
    S = "S"
    SDG = "SDG"
    X = "X"
    Y = "Y"
    Z = "Z"
    CX = "CX"
    CZ = "CZ"
    SWAP = "SWAP"

    @property
    def arity(self) -> int:
        return 2 if self in (GateKind.CX, GateKind.CZ, GateKind.SWAP) else 1


@dataclass(frozen=True, slots=True)
class CliffordGate:
    """A constant Clifford gate; for CX the first target is the control."""
    kind: GateKind
    targets: tuple[int, ...]

    def __post_init__(self):
        kind = GateKind(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "targets", tuple(self.targets))
        if len(self.targets) != kind.arity:
            raise CircuitError(f"{kind.value} acts on {kind.arity} qubit(s), got targets {self.targets}")
        if len(set(self.targets)) != len(self.targets) or min(self.targets) < 0:
            raise CircuitError(f"bad targets {self.targets} for {kind.value}")

    def check(self, n: int):
        if max(self.targets) >= n:
            raise CircuitError(f"{self.kind.value} targets {self.targets} outside {n} qubits")

    @property
    def text(self) -> str:
        return " ".join([self.kind.value, *map(str, self.targets)])
