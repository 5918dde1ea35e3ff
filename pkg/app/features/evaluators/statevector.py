"""
Dense statevector engine: the numerical ground truth for small n.

Amplitude index j has qubit q at bit q (little endian), matching the bit
packing of PauliString.
"""
import math
from functools import lru_cache

import numpy as np

from app.core import config
from app.core.errors import CircuitError, EngineCapExceeded, PauliError
from app.features.circuit_model.models import CliffordPoint, ParamCircuit, ParamPoint
from app.features.clifford_engine.models import CliffordGate, GateKind
from app.features.clifford_engine.stabilizer import StabilizerState, default_state
from app.features.pauli_core.models import Observable, PauliString

_SQRT_HALF = 1.0 / math.sqrt(2.0)
_ONE_QUBIT_MATRICES = {
    GateKind.H: np.array([[_SQRT_HALF, _SQRT_HALF], [_SQRT_HALF, -_SQRT_HALF]], dtype=complex),
    GateKind.S: np.array([[1, 0], [0, 1j]], dtype=complex),
    GateKind.SDG: np.array([[1, 0], [0, -1j]], dtype=complex),
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    GateKind.Z: np.array([[1, 0], [0, -1]], dtype=complex),
}
_I_POWERS = (1.0 + 0j, 1j, -1.0 + 0j, -1j)


def _check_size(n: int):
    if n > config.STATEVECTOR_MAX_QUBITS:
        raise EngineCapExceeded(f"statevector engine is capped at {config.STATEVECTOR_MAX_QUBITS} qubits, got {n}")


@lru_cache(maxsize=8192)
def _pauli_action(n: int, x: int, z: int, phase: int) -> tuple[np.ndarray, np.ndarray]:
    """(source index, factor) with (P psi)[j] = factor[j] * psi[source[j]]."""
    indices = np.arange(1 << n, dtype=np.int64)
    source = indices ^ x
    parity = np.bitwise_count(source & z) & 1
    factor = _I_POWERS[phase % 4] * (1 - 2 * parity.astype(np.float64))
    return source, factor


def apply_pauli(psi: np.ndarray, pauli: PauliString) -> np.ndarray:
    source, factor = _pauli_action(pauli.n, pauli.x, pauli.z, pauli.phase)
    return factor * psi[source]


def expectation(psi: np.ndarray, pauli: PauliString) -> float:
    """<psi|P|psi> for a Hermitian P."""
    return float(np.vdot(psi, apply_pauli(psi, pauli)).real)


def _apply_one_qubit(psi: np.ndarray, matrix: np.ndarray, qubit: int, n: int) -> np.ndarray:
    axis = n - 1 - qubit
    tensor = np.tensordot(matrix, psi.reshape((2,) * n), axes=([1], [axis]))
    return np.moveaxis(tensor, 0, axis).reshape(-1)


def apply_gate(psi: np.ndarray, gate: CliffordGate, n: int) -> np.ndarray:
    kind = gate.kind
    if kind.arity == 1:
        return _apply_one_qubit(psi, _ONE_QUBIT_MATRICES[kind], gate.targets[0], n)
    a, b = gate.targets
    indices = np.arange(1 << n, dtype=np.int64)
    bit_a = (indices >> a) & 1
    bit_b = (indices >> b) & 1
    if kind is GateKind.CZ:
        return psi * (1 - 2 * (bit_a & bit_b))
    if kind is GateKind.CX:
        return psi[indices ^ (bit_a << b)]
    # SWAP
    differ = bit_a ^ bit_b
    return psi[indices ^ ((differ << a) | (differ << b))]


def apply_rotation(psi: np.ndarray, generator: PauliString, angle: float) -> np.ndarray:
    """exp(-i G angle/2) psi = cos(angle/2) psi - i sin(angle/2) G psi."""
    half = 0.5 * angle
    return math.cos(half) * psi - 1j * math.sin(half) * apply_pauli(psi, generator)


@lru_cache(maxsize=64)
def _prepared(state: StabilizerState) -> np.ndarray:
    n = state.n
    if state.is_zero:
        psi = np.zeros(1 << n, dtype=complex)
        psi[0] = 1.0
        return psi
    # project a fixed generic vector onto the +1 eigenspace of every generator
    rng = np.random.default_rng(0)
    psi = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    for generator in state.generators:
        psi = 0.5 * (psi + apply_pauli(psi, generator))
    psi /= np.linalg.norm(psi)
    psi.setflags(write=False)
    return psi


def prepare_state(state: StabilizerState) -> np.ndarray:
    _check_size(state.n)
    return _prepared(state).copy()


def simulate(
    circuit: ParamCircuit,
    point: ParamPoint | CliffordPoint,
    state: StabilizerState | None = None,
) -> np.ndarray:
    """U(phi)|psi0> as a 2^n complex vector."""
    n = circuit.n
    _check_size(n)
    angles = point.to_param_point().angles
    if len(angles) != circuit.m:
        raise CircuitError(f"point assigns {len(angles)} parameters, circuit has {circuit.m}")
    state = default_state(n) if state is None else state
    if state.n != n:
        raise PauliError(f"size mismatch: state on {state.n} qubits, circuit on {n}")
    psi = prepare_state(state)
    for op in circuit.ops:
        if isinstance(op, CliffordGate):
            psi = apply_gate(psi, op, n)
        else:
            psi = apply_rotation(psi, op.generator, angles[op.param_index])
    return psi


def eval_statevector(
    circuit: ParamCircuit,
    observable: Observable,
    point: ParamPoint | CliffordPoint,
    state: StabilizerState | None = None,
) -> float:
    if observable.n != circuit.n:
        raise PauliError(f"size mismatch: observable on {observable.n} qubits, circuit on {circuit.n}")
    psi = simulate(circuit, point, state)
    return math.fsum(c * expectation(psi, p) for c, p in observable.terms)
