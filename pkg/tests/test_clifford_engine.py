import math

import numpy as np
import pytest

from app.core.errors import CircuitError, PauliError
from app.features.circuit_model.models import CliffordPoint
from app.features.circuit_model.sampling import SampleMode, sample_point
from app.features.clifford_engine.conjugation import (
    conj_gate,
    conj_rotation_quarter,
    heisenberg_at_clifford,
    heisenberg_tableau,
)
from app.features.clifford_engine.models import CliffordGate, GateKind
from app.features.clifford_engine.stabilizer import StabilizerState, expectation_stabilizer
from app.features.evaluators.statevector import prepare_state
from app.features.pauli_core.families import enumerate_all_paulis
from app.features.pauli_core.models import PauliString
from tests.conftest import circuit_unitary, gate_matrix, pauli_matrix, random_hermitian_pauli, rotation_matrix

GATES = [
    CliffordGate(GateKind.H, (0,)),
    CliffordGate(GateKind.S, (1,)),
    CliffordGate(GateKind.SDG, (0,)),
    CliffordGate(GateKind.X, (1,)),
    CliffordGate(GateKind.Y, (0,)),
    CliffordGate(GateKind.Z, (1,)),
    CliffordGate(GateKind.CX, (0, 1)),
    CliffordGate(GateKind.CX, (1, 0)),
    CliffordGate(GateKind.CZ, (0, 1)),
    CliffordGate(GateKind.SWAP, (0, 1)),
]


class TestGates:
    @pytest.mark.parametrize("gate", GATES, ids=lambda g: g.text)
    def test_conjugation_matches_matrices(self, gate):
        u = gate_matrix(gate, 2)
        for pauli in enumerate_all_paulis(2):
            for phase in range(4):
                p = pauli.times_phase(phase)
                expected = u.conj().T @ pauli_matrix(p) @ u
                assert np.allclose(pauli_matrix(conj_gate(gate, p)), expected), (gate.text, p.label)

    def test_known_images(self):
        cx = CliffordGate(GateKind.CX, (0, 1))
        assert conj_gate(cx, PauliString.from_label("XZ")).label == "-YY"
        assert conj_gate(CliffordGate(GateKind.CZ, (0, 1)), PauliString.from_label("XX")).label == "+YY"
        assert conj_gate(CliffordGate(GateKind.H, (0,)), PauliString.from_label("Y")).label == "-Y"

    def test_bad_targets(self):
        with pytest.raises(CircuitError):
            CliffordGate(GateKind.CZ, (0,))
        with pytest.raises(CircuitError):
            CliffordGate(GateKind.CX, (1, 1))
        with pytest.raises(CircuitError):
            conj_gate(CliffordGate(GateKind.H, (3,)), PauliString.from_label("XX"))


class TestRotations:
    def test_quarter_turns_match_matrices(self, rng):
        for _ in range(40):
            generator = random_hermitian_pauli(rng, 2)
            pauli = random_hermitian_pauli(rng, 2, identity=True)
            for k in range(4):
                r = rotation_matrix(generator, k * math.pi / 2)
                expected = r.conj().T @ pauli_matrix(pauli) @ r
                image = conj_rotation_quarter(generator, k, pauli)
                assert image.is_hermitian
                assert np.allclose(pauli_matrix(image), expected)

    def test_commuting_generator_is_transparent(self):
        z = PauliString.from_label("ZZ")
        assert conj_rotation_quarter(PauliString.from_label("XX"), 1, z) == z

    def test_non_hermitian_generator(self):
        with pytest.raises(PauliError):
            conj_rotation_quarter(PauliString.from_label("iX"), 1, PauliString.from_label("Z"))


class TestHeisenberg:
    def test_matches_dense_conjugation(self, small_circuits, rng):
        for circuit in small_circuits:
            point = sample_point(circuit.m, 5, circuit.n, SampleMode.clifford)
            u = circuit_unitary(circuit, point)
            for _ in range(5):
                pauli = random_hermitian_pauli(rng, circuit.n, identity=True)
                image = heisenberg_at_clifford(circuit, point, pauli)
                assert np.allclose(pauli_matrix(image), u.conj().T @ pauli_matrix(pauli) @ u)

    def test_tableau_agrees_with_direct_propagation(self, small_circuits, rng):
        for circuit in small_circuits:
            point = sample_point(circuit.m, 6, 0, SampleMode.clifford)
            tableau = heisenberg_tableau(circuit, point)
            for _ in range(10):
                pauli = random_hermitian_pauli(rng, circuit.n, identity=True).times_phase(int(rng.integers(0, 4)))
                assert tableau.apply(pauli) == heisenberg_at_clifford(circuit, point, pauli)

    def test_needs_full_clifford_point(self, small_circuits):
        circuit = small_circuits[1]
        with pytest.raises(CircuitError):
            heisenberg_at_clifford(circuit, CliffordPoint((0,) * (circuit.m + 1)), PauliString.identity(circuit.n))


class TestStabilizerState:
    def test_zero_state(self):
        state = StabilizerState.zero(3)
        assert state.is_zero
        assert expectation_stabilizer(state, PauliString.from_label("ZIZ")) == 1
        assert expectation_stabilizer(state, PauliString.from_label("-IZI")) == -1
        assert expectation_stabilizer(state, PauliString.from_label("XII")) == 0
        assert expectation_stabilizer(state, PauliString.identity(3)) == 1

    def test_ghz_state(self):
        state = StabilizerState.from_name("ghz", 2)
        assert not state.is_zero
        assert expectation_stabilizer(state, PauliString.from_label("XX")) == 1
        assert expectation_stabilizer(state, PauliString.from_label("ZZ")) == 1
        assert expectation_stabilizer(state, PauliString.from_label("YY")) == -1
        assert expectation_stabilizer(state, PauliString.from_label("ZI")) == 0

    @pytest.mark.parametrize("name", ["zero", "plus", "ghz", "+XX,-ZZ", "-YY,+XX"])
    def test_matches_dense_state(self, name):
        state = StabilizerState.from_name(name, 2)
        psi = prepare_state(state)
        for pauli in enumerate_all_paulis(2):
            for signed in (pauli, pauli.times_phase(2)):
                dense = float(np.vdot(psi, pauli_matrix(signed) @ psi).real)
                assert expectation_stabilizer(state, signed) == pytest.approx(dense, abs=1e-12)

    def test_invalid_generators(self):
        with pytest.raises(PauliError):
            StabilizerState.from_name("-ZI,+XX", 2)
        with pytest.raises(PauliError):
            StabilizerState(2, (PauliString.from_label("ZI"),))
        with pytest.raises(PauliError):
            StabilizerState(2, (PauliString.from_label("ZI"), PauliString.from_label("-ZI")))
        with pytest.raises(PauliError):
            StabilizerState(1, (PauliString.from_label("iZ"),))

    def test_non_hermitian_query(self):
        with pytest.raises(PauliError):
            expectation_stabilizer(StabilizerState.zero(1), PauliString.from_label("iZ"))

