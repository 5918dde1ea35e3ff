"""
Pauli propagation: Heisenberg-backward sum over Pauli strings.

Each rotation whose generator anticommutes with a live string splits it into
cos(phi) P + sin(phi) (i G P). Branches with equal keys are merged and tiny
coefficients pruned, so the live set stays a linear combination of Hermitian
strings with sign +1 and real coefficients.
"""
import math
from collections import defaultdict

from app.core import config
from app.core.errors import CircuitError, EngineCapExceeded, PauliError
from app.features.circuit_model.models import CliffordPoint, ParamCircuit, ParamPoint
from app.features.clifford_engine.conjugation import conj_gate
from app.features.clifford_engine.models import CliffordGate
from app.features.clifford_engine.stabilizer import StabilizerState, default_state, expectation_stabilizer
from app.features.evaluators.models import FourierExpansion, FourierTerm
from app.features.pauli_core.models import Observable, PauliString, commutes, mul
from app.utils import get_logger

logger = get_logger(__name__)


def _hermitian(n: int, x: int, z: int) -> PauliString:
    return PauliString(n, x, z, (x & z).bit_count())


def _signed_key(pauli: PauliString) -> tuple[int, int, int]:
    """(x, z, sign) of a Hermitian string."""
    return pauli.x, pauli.z, pauli.sign


def _check_cap(live: int, where: str):
    if live > config.PAULIPROP_MAX_TERMS:
        raise EngineCapExceeded(f"Pauli propagation reached {live} terms at {where}; cap is {config.PAULIPROP_MAX_TERMS}")


def _state_for(circuit: ParamCircuit, pauli: PauliString, state: StabilizerState | None) -> StabilizerState:
    if pauli.n != circuit.n:
        raise PauliError(f"size mismatch: circuit on {circuit.n} qubits, Pauli on {pauli.n}")
    if not pauli.is_hermitian:
        raise PauliError(f"{pauli.label} is not Hermitian")
    state = default_state(circuit.n) if state is None else state
    if state.n != circuit.n:
        raise PauliError(f"size mismatch: state on {state.n} qubits, circuit on {circuit.n}")
    return state


def eval_pauliprop_pauli(
    circuit: ParamCircuit,
    pauli: PauliString,
    point: ParamPoint | CliffordPoint,
    state: StabilizerState | None = None,
) -> float:
    """L_P(phi) by numeric propagation; branches merge by Pauli string only."""
    state = _state_for(circuit, pauli, state)
    angles = point.to_param_point().angles
    if len(angles) != circuit.m:
        raise CircuitError(f"point assigns {len(angles)} parameters, circuit has {circuit.m}")
    n = circuit.n
    live: dict[tuple[int, int], float] = {(pauli.x, pauli.z): float(pauli.sign)}
    for position, op in enumerate(reversed(circuit.ops)):
        following: dict[tuple[int, int], float] = defaultdict(float)
        if isinstance(op, CliffordGate):
            for (x, z), coefficient in live.items():
                gx, gz, sign = _signed_key(conj_gate(op, _hermitian(n, x, z)))
                following[(gx, gz)] += sign * coefficient
        else:
            angle = angles[op.param_index]
            cosine, sine = math.cos(angle), math.sin(angle)
            for (x, z), coefficient in live.items():
                current = _hermitian(n, x, z)
                if commutes(op.generator, current):
                    following[(x, z)] += coefficient
                    continue
                following[(x, z)] += cosine * coefficient
                gx, gz, sign = _signed_key(mul(op.generator, current).times_phase(1))
                following[(gx, gz)] += sign * sine * coefficient
        live = {key: c for key, c in following.items() if abs(c) > config.PRUNE_TOLERANCE}
        _check_cap(len(live), f"op {len(circuit.ops) - 1 - position}")
    return math.fsum(c * expectation_stabilizer(state, _hermitian(n, x, z)) for (x, z), c in live.items())


def eval_pauliprop(
    circuit: ParamCircuit,
    observable: Observable,
    point: ParamPoint | CliffordPoint,
    state: StabilizerState | None = None,
) -> float:
    if observable.n != circuit.n:
        raise PauliError(f"size mismatch: observable on {observable.n} qubits, circuit on {circuit.n}")
    return math.fsum(c * eval_pauliprop_pauli(circuit, p, point, state) for c, p in observable.terms)


def fourier_expand(
    circuit: ParamCircuit,
    pauli: PauliString,
    state: StabilizerState | None = None,
) -> FourierExpansion:
    """
    Exact trigonometric expansion of L_P over all m angles.

    Branches are keyed by (Pauli string, cos set, sin set); a branch splits
    only at anticommuting generators, so each angle enters a monomial at most
    once. Terminal strings are scored against the initial state and terms with
    equal signatures are summed; zero terms are dropped.
    """
    state = _state_for(circuit, pauli, state)
    n = circuit.n
    live: dict[tuple[int, int, int, int], float] = {(pauli.x, pauli.z, 0, 0): float(pauli.sign)}
    for position, op in enumerate(reversed(circuit.ops)):
        following: dict[tuple[int, int, int, int], float] = defaultdict(float)
        if isinstance(op, CliffordGate):
            for (x, z, cos_mask, sin_mask), coefficient in live.items():
                gx, gz, sign = _signed_key(conj_gate(op, _hermitian(n, x, z)))
                following[(gx, gz, cos_mask, sin_mask)] += sign * coefficient
        else:
            bit = 1 << op.param_index
            for (x, z, cos_mask, sin_mask), coefficient in live.items():
                current = _hermitian(n, x, z)
                if commutes(op.generator, current):
                    following[(x, z, cos_mask, sin_mask)] += coefficient
                    continue
                following[(x, z, cos_mask | bit, sin_mask)] += coefficient
                gx, gz, sign = _signed_key(mul(op.generator, current).times_phase(1))
                following[(gx, gz, cos_mask, sin_mask | bit)] += sign * coefficient
        live = {key: c for key, c in following.items() if abs(c) > config.PRUNE_TOLERANCE}
        _check_cap(len(live), f"op {len(circuit.ops) - 1 - position}")

    by_signature: dict[tuple[int, int], float] = defaultdict(float)
    for (x, z, cos_mask, sin_mask), coefficient in live.items():
        value = expectation_stabilizer(state, _hermitian(n, x, z))
        if value:
            by_signature[(cos_mask, sin_mask)] += value * coefficient
    terms = tuple(
        FourierTerm(cos_mask, sin_mask, coefficient)
        for (cos_mask, sin_mask), coefficient in by_signature.items()
        if abs(coefficient) > config.PRUNE_TOLERANCE
    )
    terms = tuple(sorted(terms, key=lambda t: (t.level, t.cos_mask, t.sin_mask)))
    logger.debug("Fourier expansion of %s: %d terms", pauli.label, len(terms))
    return FourierExpansion(circuit.m, terms)
