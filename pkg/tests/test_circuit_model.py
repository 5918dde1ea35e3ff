import math

import numpy as np
import pytest

from app.core.errors import CircuitError
from app.features.circuit_model.builders import (
    FixtureKind,
    brick_count,
    brick_pairs,
    build_brickwork,
    build_fixture,
    build_random_circuit,
)
from app.features.circuit_model.models import CliffordPoint, ParamCircuit, ParamPoint, Rotation, SplitPoint, restrict
from app.features.circuit_model.sampling import SampleMode, sample_point, sample_values
from app.features.circuit_model.utils import dump_circuit, parse_circuit
from app.features.clifford_engine.conjugation import conj_rotation_quarter
from app.features.clifford_engine.models import CliffordGate, GateKind
from app.features.pauli_core.models import PauliString


class TestParamCircuit:
    def test_parameter_indices_must_be_a_bijection(self):
        x0 = PauliString.from_label("XI")
        with pytest.raises(CircuitError):
            ParamCircuit(2, (Rotation(x0, 0), Rotation(x0, 0)))
        with pytest.raises(CircuitError):
            ParamCircuit(2, (Rotation(x0, 1),))

    def test_rejects_bad_generators_and_targets(self):
        with pytest.raises(CircuitError):
            ParamCircuit(2, (Rotation(PauliString.from_label("iXI"), 0),))
        with pytest.raises(CircuitError):
            ParamCircuit(2, (Rotation(PauliString.from_label("XII"), 0),))
        with pytest.raises(CircuitError):
            ParamCircuit(2, (CliffordGate(GateKind.CZ, (0, 2)),))

    def test_parameter_cap(self, monkeypatch):
        from app.core import config

        monkeypatch.setattr(config, "MAX_PARAMS_PER_QUBIT_SQUARED", 0)
        with pytest.raises(CircuitError):
            build_brickwork(2, 1)

    def test_rotations_sorted_by_index(self):
        ops = (Rotation(PauliString.from_label("Z"), 1), Rotation(PauliString.from_label("X"), 0))
        circuit = ParamCircuit(1, ops)
        assert circuit.m == 2
        assert [r.param_index for r in circuit.rotations] == [0, 1]
        assert circuit.generators[0].label == "+X"


class TestBrickwork:
    def test_small_sizes(self):
        assert build_brickwork(2, 1).m == 4
        six = build_brickwork(6, 5)
        assert brick_count(6, 5) == 13
        assert six.m == 52
        assert build_brickwork(10, 50).m == 900

    def test_layer_offsets(self):
        assert brick_pairs(6, 1) == [(0, 1), (2, 3), (4, 5)]
        assert brick_pairs(6, 2) == [(1, 2), (3, 4)]
        assert brick_pairs(2, 2) == []

    @pytest.mark.parametrize("n", [2, 3, 7, 12])
    def test_count_matches_closed_form(self, n):
        for layers in (1, 2, 17, 60):
            odd, even = (layers + 1) // 2, layers // 2
            assert build_brickwork(n, layers).m == 4 * (odd * (n // 2) + even * ((n - 1) // 2))

    def test_brick_layout(self):
        circuit = build_brickwork(2, 1)
        assert [getattr(op, "text") for op in circuit.ops] == [
            "CZ 0 1", "ROT +XI 0", "ROT +ZI 1", "ROT +IX 2", "ROT +IZ 3",
        ]

    def test_needs_two_qubits(self):
        with pytest.raises(CircuitError):
            build_brickwork(1, 3)
        with pytest.raises(CircuitError):
            build_brickwork(4, 0)


class TestFixtures:
    def test_product_rx(self):
        circuit, observable = build_fixture(FixtureKind.product_rx, 3)
        assert circuit.m == 3
        assert observable.label == "1 +ZZZ"

    def test_global_rotation_turns_observable_into_weight_one(self):
        circuit, observable = build_fixture(FixtureKind.global_rotation_bp, 4)
        last = circuit.ops[-1]
        assert last.generator.label == "+XZZZ"
        assert last.param_index == circuit.m - 1
        image = conj_rotation_quarter(last.generator, 1, observable.paulis[0])
        assert image.weight == 1 and image.letter(0) == "Y"

    def test_range(self):
        with pytest.raises(CircuitError):
            build_fixture(FixtureKind.global_rotation_bp, 1)


class TestPoints:
    def test_clifford_point_normalizes_and_promotes(self):
        point = CliffordPoint((5, -1, 2))
        assert point.quarters == (1, 3, 2)
        assert point.to_param_point().angles == pytest.approx((math.pi / 2, 3 * math.pi / 2, math.pi))
        assert point.shifted(0, -1).quarters == (0, 3, 2)

    def test_param_point_reduces_mod_two_pi(self):
        assert ParamPoint((7.0,)).reduced()[0] == pytest.approx(7.0 - 2 * math.pi)

    def test_sampling_is_deterministic(self):
        assert sample_point(5, 42, 3, SampleMode.uniform) == sample_point(5, 42, 3, SampleMode.uniform)
        assert sample_point(5, 42, 3, SampleMode.clifford) != sample_point(5, 42, 4, SampleMode.clifford)
        point = sample_point(3, 1, 0, SampleMode.clifford)
        assert isinstance(point, CliffordPoint) and all(0 <= k < 4 for k in point.quarters)
        assert all(isinstance(v, int) for v in sample_values(4, 1, 0, SampleMode.clifford))

    def test_uniform_quarter_frequencies(self):
        draws = np.array([sample_point(1, 9, s, SampleMode.clifford).quarters[0] for s in range(10000)])
        frequencies = np.bincount(draws, minlength=4) / draws.size
        sigma = math.sqrt(0.25 * 0.75 / draws.size)
        assert np.all(np.abs(frequencies - 0.25) <= 3 * sigma)


class TestRestrict:
    def test_mixed_split(self):
        split = SplitPoint(CliffordPoint((1, 2, 3, 0)), frozenset({0, 2}), frozenset({3, 1}))
        assert restrict(None, split, [0, 1]).quarters == (1, 0, 3, 1)
        continuous = restrict(None, split, [0.25, 0.5])
        assert isinstance(continuous, ParamPoint)
        assert continuous.angles == pytest.approx((math.pi / 2, 0.25, 3 * math.pi / 2, 0.5))

    def test_empty_free_set_keeps_base(self):
        base = CliffordPoint((1, 2))
        assert restrict(None, SplitPoint(base, frozenset({0, 1}), frozenset()), []) == base

    def test_all_free(self):
        split = SplitPoint.all_free(CliffordPoint.zeros(3))
        assert restrict(None, split, [3, 2, 1]).quarters == (3, 2, 1)

    def test_length_mismatch(self):
        with pytest.raises(CircuitError):
            restrict(None, SplitPoint.all_free(CliffordPoint.zeros(2)), [1])

    def test_split_must_partition(self):
        with pytest.raises(CircuitError):
            SplitPoint(CliffordPoint.zeros(2), frozenset({0}), frozenset({0, 1}))
        with pytest.raises(CircuitError):
            SplitPoint(CliffordPoint.zeros(3), frozenset({0}), frozenset({1}))


class TestCircuitText:
    def test_round_trip(self):
        circuit = build_random_circuit(3, 6, 5, seed=4)
        text = dump_circuit(circuit)
        assert parse_circuit(text) == circuit
        assert dump_circuit(parse_circuit(text)) == text

    def test_comments_and_errors(self):
        circuit = parse_circuit("# brick\nQUBITS 2\n\nCZ 0 1\nROT -XZ 0\n")
        assert circuit.m == 1 and circuit.ops[1].generator.sign == -1
        with pytest.raises(CircuitError, match="line 2"):
            parse_circuit("QUBITS 2\nROT XQ 0\n")
        with pytest.raises(CircuitError):
            parse_circuit("CZ 0 1\n")
