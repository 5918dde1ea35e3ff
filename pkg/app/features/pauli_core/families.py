"""Weight-two Pauli observable families."""
from enum import Enum
from itertools import combinations, product

from app.core.errors import PauliError
from app.features.pauli_core.models import PauliString


class FamilyKind(str, Enum):
    weight2_nn = "weight2_nn"
    weight2_all = "weight2_all"


def family_size(kind: FamilyKind, n: int) -> int:
    """9(n-1) nearest-neighbour or 9n(n-1)/2 arbitrary pairs."""
    if FamilyKind(kind) is FamilyKind.weight2_nn:
        return 9 * (n - 1)
    return 9 * n * (n - 1) // 2


def enumerate_family(kind: FamilyKind, n: int) -> list[PauliString]:
    """
    All weight-two Pauli strings on nearest-neighbour pairs or on all pairs.

    Ordered by qubit pair, then by letters with X < Y < Z; every element is
    Hermitian with sign +1.
    """
    if n < 2:
        raise PauliError(f"weight-two families need n >= 2, got {n}")
    kind = FamilyKind(kind)
    if kind is FamilyKind.weight2_nn:
        pairs = [(q, q + 1) for q in range(n - 1)]
    else:
        pairs = list(combinations(range(n), 2))
    return [
        PauliString.from_letters(n, {i: a, j: b})
        for i, j in pairs
        for a, b in product("XYZ", repeat=2)
    ]


def enumerate_all_paulis(n: int) -> list[PauliString]:
    """All 4^n Hermitian Pauli strings with sign +1, identity first."""
    if n < 1:
        raise PauliError(f"need n >= 1, got {n}")
    return [
        PauliString(n, x, z, (x & z).bit_count())
        for x in range(1 << n)
        for z in range(1 << n)
    ]
