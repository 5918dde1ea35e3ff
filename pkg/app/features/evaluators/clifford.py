"""
Exact evaluation at Clifford points and exact / sampled Clifford averages.
"""
import math
from collections import defaultdict
from fractions import Fraction

import numpy as np

from app.core import config
from app.core.errors import CircuitError, EngineCapExceeded, PauliError
from app.features.circuit_model.models import CliffordPoint, ParamCircuit
from app.features.circuit_model.sampling import SampleMode, sample_point
from app.features.clifford_engine.conjugation import (
    conj_gate,
    conj_rotation_quarter,
    heisenberg_at_clifford,
    heisenberg_tableau,
)
from app.features.clifford_engine.models import CliffordGate
from app.features.clifford_engine.stabilizer import StabilizerState, default_state, expectation_stabilizer
from app.features.pauli_core.models import Observable, PauliString
from app.utils import get_logger

logger = get_logger(__name__)


def _state_for(circuit: ParamCircuit, state: StabilizerState | None) -> StabilizerState:
    state = default_state(circuit.n) if state is None else state
    if state.n != circuit.n:
        raise PauliError(f"size mismatch: state on {state.n} qubits, circuit on {circuit.n}")
    return state


def _check_observable(circuit: ParamCircuit, observable: Observable):
    if observable.n != circuit.n:
        raise PauliError(f"size mismatch: observable on {observable.n} qubits, circuit on {circuit.n}")


def eval_clifford_pauli(
    circuit: ParamCircuit,
    pauli: PauliString,
    point: CliffordPoint,
    state: StabilizerState | None = None,
) -> int:
    """L_P at a Clifford point, always -1, 0 or +1."""
    if not isinstance(point, CliffordPoint):
        raise CircuitError("the Clifford engine only evaluates CliffordPoints")
    state = _state_for(circuit, state)
    return expectation_stabilizer(state, heisenberg_at_clifford(circuit, point, pauli))


def eval_clifford(
    circuit: ParamCircuit,
    observable: Observable,
    point: CliffordPoint,
    state: StabilizerState | None = None,
) -> float:
    """
    L(phi) = sum_i c_i <psi0| U^dagger P_i U |psi0> at a Clifford point.

    Polynomial in n and m; each term is exactly -c_i, 0 or +c_i.
    """
    _check_observable(circuit, observable)
    return math.fsum(c * eval_clifford_pauli(circuit, p, point, state) for c, p in observable.terms)


def eval_clifford_many(
    circuit: ParamCircuit,
    paulis: list[PauliString],
    point: CliffordPoint,
    state: StabilizerState | None = None,
) -> list[int]:
    """Values of many single-Pauli losses at one point, sharing one backward sweep."""
    if not isinstance(point, CliffordPoint):
        raise CircuitError("the Clifford engine only evaluates CliffordPoints")
    state = _state_for(circuit, state)
    tableau = heisenberg_tableau(circuit, point)
    return [expectation_stabilizer(state, tableau.apply(p)) for p in paulis]


def clifford_value_counts(
    circuit: ParamCircuit,
    pauli: PauliString,
    state: StabilizerState | None = None,
) -> dict[int, int]:
    """
    How many of the 4^m Clifford points give L_P = -1, 0 and +1.

    Every rotation branches the propagated string four ways, one per quarter
    turn; identical strings are merged with multiplicities, so the counts are
    exact integers summing to 4^m.
    """
    m = circuit.m
    if m > config.CLIFFORD_ENUMERATION_MAX_PARAMS:
        raise EngineCapExceeded(
            f"exact Clifford average needs 4^{m} points; cap is m <= {config.CLIFFORD_ENUMERATION_MAX_PARAMS}"
        )
    state = _state_for(circuit, state)
    if pauli.n != circuit.n:
        raise PauliError(f"size mismatch: circuit on {circuit.n} qubits, Pauli on {pauli.n}")
    frontier: dict[PauliString, int] = {pauli: 1}
    for op in reversed(circuit.ops):
        following: dict[PauliString, int] = defaultdict(int)
        if isinstance(op, CliffordGate):
            for current, count in frontier.items():
                following[conj_gate(op, current)] += count
        else:
            for current, count in frontier.items():
                for quarters in range(4):
                    following[conj_rotation_quarter(op.generator, quarters, current)] += count
        frontier = following
    counts = {-1: 0, 0: 0, 1: 0}
    for current, count in frontier.items():
        counts[expectation_stabilizer(state, current)] += count
    return counts


def mean_over_clifford(
    circuit: ParamCircuit,
    observable: Observable,
    state: StabilizerState | None = None,
) -> float:
    """
    Exact average of L over all 4^m Clifford points.

    Raises EngineCapExceeded when m is above CLIFFORD_ENUMERATION_MAX_PARAMS.
    """
    _check_observable(circuit, observable)
    total = Fraction(0)
    for coefficient, pauli in observable.terms:
        counts = clifford_value_counts(circuit, pauli, state)
        total += Fraction(coefficient) * Fraction(counts[1] - counts[-1], 4**circuit.m)
    logger.debug("exact Clifford mean over 4^%d points: %s", circuit.m, total)
    return float(total)


def clifford_mean_sampled(
    circuit: ParamCircuit,
    observable: Observable,
    samples: int,
    seed: int,
    state: StabilizerState | None = None,
) -> tuple[float, float]:
    """Mean and standard error of L over `samples` uniformly drawn Clifford points."""
    _check_observable(circuit, observable)
    if samples < 1:
        raise CircuitError(f"need at least one sample, got {samples}")
    values = np.array([
        eval_clifford(circuit, observable, sample_point(circuit.m, seed, s, SampleMode.clifford), state)
        for s in range(samples)
    ])
    stderr = float(values.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    return float(values.mean()), stderr
