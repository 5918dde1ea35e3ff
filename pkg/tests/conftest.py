"""
Shared fixtures and dense-matrix oracles.

The oracles build operators with numpy.kron, independently of the engines
under test. Qubit q is bit q of the amplitude index, so qubit n-1 is the
leftmost kron factor.
"""
import math

import numpy as np
import pytest

from app.features.circuit_model.builders import build_random_circuit
from app.features.circuit_model.models import ParamCircuit, ParamPoint
from app.features.clifford_engine.models import CliffordGate, GateKind
from app.features.pauli_core.models import PauliString

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
S = np.diag([1, 1j]).astype(complex)

ONE_QUBIT = {
    GateKind.H: H,
    GateKind.S: S,
    GateKind.SDG: S.conj().T,
    GateKind.X: X,
    GateKind.Y: Y,
    GateKind.Z: Z,
}


def kron_all(factors: list[np.ndarray]) -> np.ndarray:
    result = np.array([[1.0 + 0j]])
    for factor in factors:
        result = np.kron(result, factor)
    return result


def pauli_matrix(pauli: PauliString) -> np.ndarray:
    factors = []
    for q in reversed(range(pauli.n)):
        factor = I2
        if (pauli.x >> q) & 1:
            factor = factor @ X
        if (pauli.z >> q) & 1:
            factor = factor @ Z
        factors.append(factor)
    return (1j ** pauli.phase) * kron_all(factors)


def gate_matrix(gate: CliffordGate, n: int) -> np.ndarray:
    if gate.kind in ONE_QUBIT:
        q = gate.targets[0]
        return kron_all([ONE_QUBIT[gate.kind] if k == q else I2 for k in reversed(range(n))])
    a, b = gate.targets
    dim = 1 << n
    matrix = np.zeros((dim, dim), dtype=complex)
    for j in range(dim):
        bit_a, bit_b = (j >> a) & 1, (j >> b) & 1
        if gate.kind is GateKind.CZ:
            matrix[j, j] = -1 if bit_a and bit_b else 1
        elif gate.kind is GateKind.CX:
            matrix[j ^ (bit_a << b), j] = 1
        else:
            target = j
            if bit_a != bit_b:
                target ^= (1 << a) | (1 << b)
            matrix[target, j] = 1
    return matrix


def rotation_matrix(pauli: PauliString, angle: float) -> np.ndarray:
    return math.cos(angle / 2) * np.eye(1 << pauli.n) - 1j * math.sin(angle / 2) * pauli_matrix(pauli)


def circuit_unitary(circuit: ParamCircuit, point) -> np.ndarray:
    angles = point.to_param_point().angles
    unitary = np.eye(1 << circuit.n, dtype=complex)
    for op in circuit.ops:
        if isinstance(op, CliffordGate):
            unitary = gate_matrix(op, circuit.n) @ unitary
        else:
            unitary = rotation_matrix(op.generator, angles[op.param_index]) @ unitary
    return unitary


def dense_loss(circuit: ParamCircuit, pauli: PauliString, point) -> float:
    """<0|U^dagger P U|0> from full matrices."""
    psi = circuit_unitary(circuit, point)[:, 0]
    return float(np.vdot(psi, pauli_matrix(pauli) @ psi).real)


def random_hermitian_pauli(rng: np.random.Generator, n: int, identity: bool = False) -> PauliString:
    while True:
        x, z = (int(v) for v in rng.integers(0, 1 << n, size=2))
        if identity or x or z:
            return PauliString(n, x, z, (x & z).bit_count() + 2 * int(rng.integers(0, 2)))


def random_angles(rng: np.random.Generator, m: int) -> ParamPoint:
    return ParamPoint(tuple(rng.uniform(0.0, 2 * math.pi, size=m)))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def small_circuits() -> list[ParamCircuit]:
    """Random circuits with n <= 4 and m <= 8."""
    circuits = []
    for index in range(12):
        n = 1 + index % 4
        m = 1 + (3 * index) % 8
        circuits.append(build_random_circuit(n, m, gates=2 * n, seed=99, index=index))
    return circuits
