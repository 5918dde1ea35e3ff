"""
GF(2) span of Pauli strings, phases ignored.

Rows are 2n-bit symplectic vectors kept in fully reduced echelon form: every
row owns one pivot bit (its highest set bit) and no other row has that bit set.
Membership is then a single reduction pass.
"""
from dataclasses import dataclass

from app.core.errors import PauliError
from app.features.pauli_core.models import PauliString


def _reduce(rows: tuple[int, ...], vector: int) -> int:
    for row in rows:
        if (vector >> (row.bit_length() - 1)) & 1:
            vector ^= row
    return vector


@dataclass(frozen=True, slots=True)
class SymplecticBasis:
    """Reduced basis of the group generated by some Pauli strings, up to phase."""
    n: int
    rows: tuple[int, ...] = ()

    @classmethod
    def empty(cls, n: int) -> "SymplecticBasis":
        return cls(n, ())

    @classmethod
    def from_paulis(cls, n: int, paulis: list[PauliString]) -> "SymplecticBasis":
        basis = cls.empty(n)
        for pauli in paulis:
            _, basis = span_insert(basis, pauli)
        return basis

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains(self, pauli: PauliString) -> bool:
        return span_contains(self, pauli)

    def __contains__(self, pauli: PauliString) -> bool:
        return span_contains(self, pauli)


def _check(basis: SymplecticBasis, pauli: PauliString):
    if basis.n != pauli.n:
        raise PauliError(f"size mismatch: basis on {basis.n} qubits, Pauli on {pauli.n}")


def span_contains(basis: SymplecticBasis, pauli: PauliString) -> bool:
    """True iff the symplectic vector of `pauli` lies in the span of `basis`."""
    _check(basis, pauli)
    return _reduce(basis.rows, pauli.symplectic) == 0


def span_insert(basis: SymplecticBasis, pauli: PauliString) -> tuple[bool, SymplecticBasis]:
    """
    Add `pauli` to the span.

    Returns (False, basis) unchanged when it is already in the span, otherwise
    (True, extended basis).
    """
    _check(basis, pauli)
    vector = _reduce(basis.rows, pauli.symplectic)
    if vector == 0:
        return False, basis
    pivot = vector.bit_length() - 1
    rows = [row ^ vector if (row >> pivot) & 1 else row for row in basis.rows]
    rows.append(vector)
    rows.sort(reverse=True)
    return True, SymplecticBasis(basis.n, tuple(rows))
