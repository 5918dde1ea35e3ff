"""
Circuit builders: brickwork ansatz, named fixtures and random small circuits.
"""
from enum import Enum

import numpy as np

from app.core.defaults import rng_for
from app.core.errors import CircuitError
from app.features.circuit_model.models import ParamCircuit, Rotation
from app.features.clifford_engine.models import CliffordGate, GateKind
from app.features.pauli_core.models import Observable, PauliString


class FixtureKind(str, Enum):
    product_rx = "product_rx"
    global_rotation_bp = "global_rotation_bp"


def brick_pairs(n: int, layer: int) -> list[tuple[int, int]]:
    """Qubit pairs of 1-based `layer`: odd layers start at qubit 0, even layers at 1 (open boundary)."""
    start = 0 if layer % 2 == 1 else 1
    return [(q, q + 1) for q in range(start, n - 1, 2)]


def brick_count(n: int, layers: int) -> int:
    return sum(len(brick_pairs(n, layer)) for layer in range(1, layers + 1))


def build_brickwork(n: int, layers: int) -> ParamCircuit:
    """
    Alternating-offset brickwork of CZ + RX/RZ bricks.

    Each brick on (a, a+1) is CZ(a, a+1) followed by RX, RZ on qubit a and then
    RX, RZ on qubit a+1; parameters are numbered in circuit order, so every
    brick carries four parameters.
    """
    if n < 2:
        raise CircuitError(f"brickwork needs n >= 2, got {n}")
    if layers < 1:
        raise CircuitError(f"brickwork needs at least one layer, got {layers}")
    ops = []
    index = 0
    for layer in range(1, layers + 1):
        for a, b in brick_pairs(n, layer):
            ops.append(CliffordGate(GateKind.CZ, (a, b)))
            for qubit in (a, b):
                for letter in "XZ":
                    ops.append(Rotation(PauliString.single(n, qubit, letter), index))
                    index += 1
    return ParamCircuit(n, tuple(ops))


def _all_z(n: int) -> Observable:
    return Observable.single(PauliString.from_letters(n, {q: "Z" for q in range(n)}))


def build_fixture(kind: FixtureKind, n: int) -> tuple[ParamCircuit, Observable]:
    """
    Named fixture circuits.

    product_rx: RX(phi_q) on every qubit with O = Z...Z, so L = prod cos(phi_q)
    and no Clifford point has a null direction.

    global_rotation_bp: one brickwork layer followed by a single rotation with
    generator X_0 Z_1 ... Z_{n-1}, again with O = Z...Z. At a quarter turn of the
    last gate the observable becomes a weight-one Y_0.
    """
    kind = FixtureKind(kind)
    if kind is FixtureKind.product_rx:
        if n < 1:
            raise CircuitError(f"product_rx needs n >= 1, got {n}")
        ops = tuple(Rotation(PauliString.single(n, q, "X"), q) for q in range(n))
        return ParamCircuit(n, ops), _all_z(n)
    if n < 2:
        raise CircuitError(f"global_rotation_bp needs n >= 2, got {n}")
    prefix = build_brickwork(n, 1)
    letters = {0: "X"} | {q: "Z" for q in range(1, n)}
    last = Rotation(PauliString.from_letters(n, letters), prefix.m)
    return ParamCircuit(n, prefix.ops + (last,)), _all_z(n)


def build_empty(n: int) -> ParamCircuit:
    return ParamCircuit(n, ())


_ONE_QUBIT = (GateKind.H, GateKind.S, GateKind.SDG, GateKind.X, GateKind.Y, GateKind.Z)
_TWO_QUBIT = (GateKind.CX, GateKind.CZ, GateKind.SWAP)


def build_random_circuit(n: int, m: int, gates: int, seed: int, index: int = 0) -> ParamCircuit:
    """
    A random Clifford-VQA circuit with `m` rotations and `gates` constant gates.

    Generators are random non-identity Pauli strings of random sign; the layout
    is fully determined by (seed, index).
    """
    rng = rng_for(seed, index)
    slots = np.array([1] * m + [0] * gates)
    rng.shuffle(slots)
    ops = []
    param = 0
    for is_rotation in slots:
        if is_rotation:
            x = z = 0
            while x == 0 and z == 0:
                x = int(rng.integers(0, 1 << n))
                z = int(rng.integers(0, 1 << n))
            generator = PauliString(n, x, z, (x & z).bit_count() + 2 * int(rng.integers(0, 2)))
            ops.append(Rotation(generator, param))
            param += 1
        elif n >= 2 and rng.random() < 0.5:
            a, b = (int(q) for q in rng.choice(n, size=2, replace=False))
            ops.append(CliffordGate(_TWO_QUBIT[int(rng.integers(0, len(_TWO_QUBIT)))], (a, b)))
        else:
            qubit = int(rng.integers(0, n))
            ops.append(CliffordGate(_ONE_QUBIT[int(rng.integers(0, len(_ONE_QUBIT)))], (qubit,)))
    return ParamCircuit(n, tuple(ops))
