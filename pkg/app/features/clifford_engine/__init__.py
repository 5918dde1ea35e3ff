"""
Clifford engine feature module.

Heisenberg-picture conjugation of Pauli strings through Clifford gates and
quarter-turn Pauli rotations, and Pauli expectations in stabilizer states.
"""
