"""
Stabilizer states as generator lists, and exact Pauli expectations in them.
"""
from dataclasses import dataclass, field
from functools import lru_cache

from app.core import config
from app.core.errors import PauliError
from app.features.pauli_core.models import PauliString, commutes, mul


@dataclass(frozen=True, slots=True)
class StabilizerState:
    """
    A pure n-qubit stabilizer state given by n independent, commuting,
    Hermitian generators with signs.

    The default (`zero`) is |0...0>, stabilized by +Z_q.
    """
    n: int
    generators: tuple[PauliString, ...]
    # (pivot vector, product of generators) in fully reduced echelon form
    _rows: tuple[tuple[int, PauliString], ...] = field(default=(), repr=False, compare=False)
    _is_zero: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.generators) != self.n:
            raise PauliError(f"{self.n}-qubit stabilizer state needs {self.n} generators, got {len(self.generators)}")
        rows: list[tuple[int, PauliString]] = []
        for i, generator in enumerate(self.generators):
            if generator.n != self.n or not generator.is_hermitian:
                raise PauliError(f"generator {generator.label} is not a Hermitian {self.n}-qubit Pauli")
            for other in self.generators[:i]:
                if not commutes(generator, other):
                    raise PauliError(f"generators {other.label} and {generator.label} anticommute")
            vector, product = generator.symplectic, generator
            for row_vector, row_pauli in rows:
                if (vector >> (row_vector.bit_length() - 1)) & 1:
                    vector ^= row_vector
                    product = mul(product, row_pauli)
            if vector == 0:
                raise PauliError(f"generator {generator.label} is dependent on the others")
            pivot = vector.bit_length() - 1
            rows = [
                (row_vector ^ vector, mul(row_pauli, product)) if (row_vector >> pivot) & 1 else (row_vector, row_pauli)
                for row_vector, row_pauli in rows
            ]
            rows.append((vector, product))
        object.__setattr__(self, "_rows", tuple(rows))
        object.__setattr__(
            self,
            "_is_zero",
            all(g.x == 0 and g.z == 1 << q and g.sign == 1 for q, g in enumerate(self.generators)),
        )

    @classmethod
    def zero(cls, n: int) -> "StabilizerState":
        return cls(n, tuple(PauliString.single(n, q, "Z") for q in range(n)))

    @classmethod
    def from_name(cls, name: str, n: int) -> "StabilizerState":
        """
        Build a named state: `zero`, `plus`, `ghz`, or a comma-separated
        generator list such as "+XX,+ZZ".
        """
        key = name.strip().lower()
        if key == "zero":
            return cls.zero(n)
        if key == "plus":
            return cls(n, tuple(PauliString.single(n, q, "X") for q in range(n)))
        if key == "ghz":
            generators = [PauliString.from_letters(n, {q: "X" for q in range(n)})]
            generators += [PauliString.from_letters(n, {q: "Z", q + 1: "Z"}) for q in range(n - 1)]
            return cls(n, tuple(generators))
        generators = tuple(PauliString.from_label(label) for label in name.split(","))
        if any(g.n != n for g in generators):
            raise PauliError(f"stabilizer generators {name!r} do not act on {n} qubits")
        return cls(n, generators)

    @property
    def is_zero(self) -> bool:
        return self._is_zero

    @property
    def label(self) -> str:
        return ",".join(g.label for g in self.generators)


@lru_cache(maxsize=64)
def named_state(name: str, n: int) -> StabilizerState:
    return StabilizerState.from_name(name, n)


def default_state(n: int) -> StabilizerState:
    """The configured initial state (STABILIZER_STATE, |0...0> unless overridden)."""
    return named_state(config.STABILIZER_STATE, n)


def expectation_stabilizer(state: StabilizerState, pauli: PauliString) -> int:
    """
    <psi|P|psi> in {-1, 0, +1}.

    Zero unless P commutes with every generator; then P equals plus or minus
    a product of generators, and the sign of that relation is the answer.
    """
    if not pauli.is_hermitian:
        raise PauliError(f"{pauli.label} is not Hermitian")
    if pauli.n != state.n:
        raise PauliError(f"size mismatch: state on {state.n} qubits, Pauli on {pauli.n}")
    if state.is_zero:
        return 0 if pauli.x else pauli.sign
    if not all(commutes(pauli, g) for g in state.generators):
        return 0
    vector = pauli.symplectic
    product = PauliString.identity(state.n)
    for row_vector, row_pauli in state._rows:
        if (vector >> (row_vector.bit_length() - 1)) & 1:
            vector ^= row_vector
            product = mul(product, row_pauli)
    return 1 if (pauli.phase - product.phase) % 4 == 0 else -1
