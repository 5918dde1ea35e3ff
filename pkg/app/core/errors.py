"""
Exception hierarchy shared by every feature module.

Each error carries the process exit code the CLI reports for it.
"""


class LandscapeError(Exception):
    """Base class for all errors raised by this package."""

    exit_code: int = 1


class PauliError(LandscapeError, ValueError):
    """Size mismatch, non-Hermitian input or malformed Pauli text."""


class CircuitError(LandscapeError, ValueError):
    """Bad gate targets, parameter-index violations or unassigned parameters."""


class EngineCapExceeded(LandscapeError):
    """An evaluation engine would exceed its configured size budget.

    Signals an intractable request (too many qubits, terms or Clifford points),
    not a bug.
    """

    exit_code = 3


class ConfigError(LandscapeError):
    """Invalid run configuration or an input file with the wrong schema."""

    exit_code = 2
