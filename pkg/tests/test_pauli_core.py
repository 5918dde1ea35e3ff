import itertools

import numpy as np
import pytest

from app.core.errors import PauliError
from app.features.pauli_core.basis import SymplecticBasis, span_contains, span_insert
from app.features.pauli_core.families import FamilyKind, enumerate_all_paulis, enumerate_family, family_size
from app.features.pauli_core.models import Observable, PauliString, commutes, mul, support, weight
from tests.conftest import X, Y, Z, pauli_matrix


class TestPauliString:
    def test_labels_parse_to_matching_matrices(self):
        assert np.allclose(pauli_matrix(PauliString.from_label("Y")), Y)
        assert np.allclose(pauli_matrix(PauliString.from_label("-X")), -X)
        assert np.allclose(pauli_matrix(PauliString.from_label("iZ")), 1j * Z)
        # qubit 0 is the leftmost letter but the least significant kron factor
        assert np.allclose(pauli_matrix(PauliString.from_label("XZ")), np.kron(Z, X))

    def test_label_renders_sign_and_letters(self):
        assert PauliString.from_label("-iXYZ").label == "-iXYZ"
        assert PauliString.from_letters(3, {0: "Y", 2: "Z"}).label == "+YIZ"
        assert PauliString.identity(2).label == "+II"

    def test_hermitian_and_sign(self):
        y = PauliString.from_label("Y")
        assert y.is_hermitian and y.sign == 1
        assert PauliString.from_label("-YY").sign == -1
        assert not PauliString.from_label("iX").is_hermitian
        with pytest.raises(PauliError):
            PauliString.from_label("iX").sign

    def test_mul_matches_matrix_product(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 4))
            p, q = (PauliString(n, *map(int, rng.integers(0, 1 << n, size=2)), int(rng.integers(0, 4))) for _ in range(2))
            assert np.allclose(pauli_matrix(mul(p, q)), pauli_matrix(p) @ pauli_matrix(q))
            assert p * q == mul(p, q)

    def test_commutes_matches_matrices(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 4))
            p, q = (PauliString(n, *map(int, rng.integers(0, 1 << n, size=2))) for _ in range(2))
            a, b = pauli_matrix(p), pauli_matrix(q)
            assert commutes(p, q) == np.allclose(a @ b, b @ a)

    def test_weight_and_support(self):
        p = PauliString.from_label("XIYZI")
        assert weight(p) == 3 == p.weight
        assert support(p) == frozenset({0, 2, 3}) == p.support

    def test_unsigned_and_times_phase(self):
        p = PauliString.from_label("-XY")
        assert p.unsigned().label == "+XY"
        assert p.times_phase(2).label == "+XY"
        assert p.times_phase(1).label == "-iXY"

    @pytest.mark.parametrize("label", ["", "XQ", "+-X", "ii"])
    def test_malformed_labels(self, label):
        with pytest.raises(PauliError):
            PauliString.from_label(label)

    def test_size_mismatch(self):
        with pytest.raises(PauliError):
            mul(PauliString.from_label("XX"), PauliString.from_label("X"))
        with pytest.raises(PauliError):
            commutes(PauliString.from_label("XX"), PauliString.from_label("X"))

    def test_bits_must_fit(self):
        with pytest.raises(PauliError):
            PauliString(2, 4, 0)


class TestObservable:
    def test_parse_folds_signs_into_coefficients(self):
        observable = Observable.parse("0.5 -ZZ + XI")
        assert observable.terms == (
            (-0.5, PauliString.from_label("ZZ")),
            (1.0, PauliString.from_label("XI")),
        )

    def test_rejects_duplicates_and_non_hermitian(self):
        with pytest.raises(PauliError):
            Observable.parse("1 ZZ + 2 -ZZ")
        with pytest.raises(PauliError):
            Observable.single(PauliString.from_label("iZ"))
        with pytest.raises(PauliError):
            Observable.parse("1 ZZ + 1 Z")


class TestSymplecticBasis:
    def test_product_is_in_span(self):
        z01 = PauliString.from_label("ZZI")
        z12 = PauliString.from_label("IZZ")
        basis = SymplecticBasis.from_paulis(3, [z01, z12])
        assert basis.rank == 2
        assert span_contains(basis, PauliString.from_label("ZIZ"))
        assert PauliString.from_label("-ZIZ") in basis
        assert not span_contains(basis, PauliString.from_label("XIZ"))

    def test_insert_reports_dependence(self):
        basis = SymplecticBasis.empty(2)
        added, basis = span_insert(basis, PauliString.from_label("XX"))
        assert added
        added, same = span_insert(basis, PauliString.from_label("-XX"))
        assert not added and same is basis

    def test_identity_is_always_contained(self):
        assert span_contains(SymplecticBasis.empty(3), PauliString.identity(3))

    def test_span_matches_brute_force_group(self, rng):
        n = 3
        family = enumerate_family(FamilyKind.weight2_all, n)
        for _ in range(10):
            chosen = [family[int(i)] for i in rng.choice(len(family), size=3, replace=False)]
            group = set()
            for mask in range(1 << len(chosen)):
                vector = 0
                for k, p in enumerate(chosen):
                    if (mask >> k) & 1:
                        vector ^= p.symplectic
                group.add(vector)
            basis = SymplecticBasis.from_paulis(n, chosen)
            for p in enumerate_all_paulis(n):
                assert span_contains(basis, p) == (p.symplectic in group)
            assert 1 << basis.rank == len(group)


class TestFamilies:
    @pytest.mark.parametrize("n", [2, 3, 6, 8])
    def test_sizes(self, n):
        assert len(enumerate_family(FamilyKind.weight2_nn, n)) == 9 * (n - 1) == family_size(FamilyKind.weight2_nn, n)
        assert len(enumerate_family(FamilyKind.weight2_all, n)) == 9 * n * (n - 1) // 2

    def test_members_are_distinct_weight_two_hermitian(self):
        family = enumerate_family(FamilyKind.weight2_all, 4)
        assert len({(p.x, p.z) for p in family}) == len(family)
        assert all(p.weight == 2 and p.sign == 1 for p in family)
        assert family[0].label == "+XXII"

    def test_needs_two_qubits(self):
        with pytest.raises(PauliError):
            enumerate_family(FamilyKind.weight2_nn, 1)

    def test_all_paulis(self):
        paulis = enumerate_all_paulis(2)
        assert len(paulis) == 16
        assert paulis[0] == PauliString.identity(2)
        assert len({p.label for p in paulis}) == 16
        assert all(p.is_hermitian and p.sign == 1 for p in paulis)
        assert {p.label for p in paulis} == {"+" + "".join(t) for t in itertools.product("IXYZ", repeat=2)}
