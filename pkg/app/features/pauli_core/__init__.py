"""Pauli-string algebra over n qubits in packed symplectic form."""
from app.features.pauli_core.basis import SymplecticBasis, span_contains, span_insert
from app.features.pauli_core.families import FamilyKind, enumerate_all_paulis, enumerate_family, family_size
from app.features.pauli_core.models import Observable, PauliString, commutes, mul, support, weight

__all__ = [
    "FamilyKind",
    "Observable",
    "PauliString",
    "SymplecticBasis",
    "commutes",
    "enumerate_all_paulis",
    "enumerate_family",
    "family_size",
    "mul",
    "span_contains",
    "span_insert",
    "support",
    "weight",
]
