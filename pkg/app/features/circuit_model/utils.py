"""
Line-oriented circuit text format.

    QUBITS 3
    CZ 0 1
    ROT +XIZ 0

One operation per line; `ROT <pauli> <param index>` for rotations. Blank lines
and lines starting with `#` are ignored.
"""
from app.core.errors import CircuitError
from app.features.circuit_model.models import ParamCircuit, Rotation
from app.features.clifford_engine.models import CliffordGate, GateKind
from app.features.pauli_core.models import PauliString


def dump_circuit(circuit: ParamCircuit) -> str:
    lines = [f"QUBITS {circuit.n}"]
    lines += [op.text for op in circuit.ops]
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> ParamCircuit:
    """Inverse of dump_circuit."""
    n: int | None = None
    ops = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, *rest = line.split()
        try:
            if head == "QUBITS":
                n = int(rest[0])
            elif head == "ROT":
                ops.append(Rotation(PauliString.from_label(rest[0]), int(rest[1])))
            else:
                ops.append(CliffordGate(GateKind(head), tuple(int(t) for t in rest)))
        except (IndexError, ValueError) as e:
            raise CircuitError(f"line {line_number}: cannot parse {line!r}: {e}") from e
    if n is None:
        raise CircuitError("circuit text lacks a QUBITS line")
    return ParamCircuit(n, tuple(ops))
