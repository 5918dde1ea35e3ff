"""
Evaluators feature module.

Loss, gradient and Hessian evaluation through three interchangeable engines
(exact Clifford path, dense statevector, Pauli propagation / Fourier
expansion), Clifford-point averaging and variance estimators.
"""
