"""
Heisenberg-backward propagation of Pauli strings.

Every rule returns g^dagger P g for the gate g, phase-exact, in the
i^k * X^x Z^z convention of PauliString. A circuit U = g_L ... g_1 pulls an
observable back to the initial state by conjugating with g_L first.
"""
from dataclasses import dataclass
from typing import TYPE_CHECKING

from app.core.errors import CircuitError, PauliError
from app.features.clifford_engine.models import CliffordGate, GateKind
from app.features.pauli_core.models import PauliString, commutes, mul

if TYPE_CHECKING:
    from app.features.circuit_model.models import CliffordPoint, ParamCircuit


def conj_gate(gate: CliffordGate, pauli: PauliString) -> PauliString:
    """Return gate^dagger * pauli * gate."""
    gate.check(pauli.n)
    x, z, phase = pauli.x, pauli.z, pauli.phase
    kind = gate.kind
    a = 1 << gate.targets[0]
    if kind is GateKind.H:
        xa, za = x & a, z & a
        if xa and za:
            phase += 2
        x = (x & ~a) | za
        z = (z & ~a) | xa
    elif kind is GateKind.S:
        if x & a:
            phase += 3
            z ^= a
    elif kind is GateKind.SDG:
        if x & a:
            phase += 1
            z ^= a
    elif kind is GateKind.X:
        if z & a:
            phase += 2
    elif kind is GateKind.Z:
        if x & a:
            phase += 2
    elif kind is GateKind.Y:
        if bool(x & a) != bool(z & a):
            phase += 2
    else:
        b = 1 << gate.targets[1]
        if kind is GateKind.CX:
            if x & a:
                x ^= b
            if z & b:
                z ^= a
        elif kind is GateKind.CZ:
            if (x & a) and (x & b):
                phase += 2
            if x & a:
                z ^= b
            if x & b:
                z ^= a
        elif kind is GateKind.SWAP:
            if bool(x & a) != bool(x & b):
                x ^= a | b
            if bool(z & a) != bool(z & b):
                z ^= a | b
    return PauliString(pauli.n, x, z, phase % 4)


def conj_rotation_quarter(generator: PauliString, quarters: int, pauli: PauliString) -> PauliString:
    """
    Return e^{iG theta/2} P e^{-iG theta/2} for theta = quarters * pi/2.

    For anticommuting G and P this is cos(theta) P + i sin(theta) G P, which at
    quarter turns is a single Hermitian Pauli up to sign.
    """
    if not generator.is_hermitian:
        raise PauliError(f"rotation generator {generator.label} is not Hermitian")
    quarters %= 4
    if quarters == 0 or commutes(generator, pauli):
        return pauli
    if quarters == 2:
        return pauli.times_phase(2)
    return mul(generator, pauli).times_phase(quarters)


def _check_point(circuit: "ParamCircuit", point: "CliffordPoint"):
    quarters = getattr(point, "quarters", None)
    if quarters is None:
        raise CircuitError("Clifford propagation needs a CliffordPoint")
    if len(quarters) != circuit.m:
        raise CircuitError(f"point assigns {len(quarters)} parameters, circuit has {circuit.m}")


def heisenberg_at_clifford(circuit: "ParamCircuit", point: "CliffordPoint", pauli: PauliString) -> PauliString:
    """U(phi_c)^dagger P U(phi_c), propagated gate by gate from the end of the circuit."""
    _check_point(circuit, point)
    if pauli.n != circuit.n:
        raise PauliError(f"size mismatch: circuit on {circuit.n} qubits, Pauli on {pauli.n}")
    quarters = point.quarters
    for op in reversed(circuit.ops):
        if isinstance(op, CliffordGate):
            pauli = conj_gate(op, pauli)
        else:
            pauli = conj_rotation_quarter(op.generator, quarters[op.param_index], pauli)
    return pauli


@dataclass(frozen=True, slots=True)
class HeisenbergTableau:
    """
    Images U^dagger X_q U and U^dagger Z_q U of every single-qubit generator.

    Conjugation is multiplicative, so the image of any Pauli string is the
    product of generator images taken in the canonical order X_0 Z_0 X_1 Z_1 ...
    """
    n: int
    x_images: tuple[PauliString, ...]
    z_images: tuple[PauliString, ...]

    def apply(self, pauli: PauliString) -> PauliString:
        if pauli.n != self.n:
            raise PauliError(f"size mismatch: tableau on {self.n} qubits, Pauli on {pauli.n}")
        image = PauliString(self.n, 0, 0, pauli.phase)
        for q in range(self.n):
            if (pauli.x >> q) & 1:
                image = mul(image, self.x_images[q])
            if (pauli.z >> q) & 1:
                image = mul(image, self.z_images[q])
        return image


def heisenberg_tableau(circuit: "ParamCircuit", point: "CliffordPoint") -> HeisenbergTableau:
    """Propagate all 2n generators through the circuit in one backward sweep."""
    _check_point(circuit, point)
    n = circuit.n
    images = [PauliString(n, 1 << q, 0, 0) for q in range(n)]
    images += [PauliString(n, 0, 1 << q, 0) for q in range(n)]
    quarters = point.quarters
    for op in reversed(circuit.ops):
        if isinstance(op, CliffordGate):
            images = [conj_gate(op, image) for image in images]
        else:
            turns = quarters[op.param_index]
            images = [conj_rotation_quarter(op.generator, turns, image) for image in images]
    return HeisenbergTableau(n, tuple(images[:n]), tuple(images[n:]))
