import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

LOG_LEVEL: str = os.environ.get("LOG_LEVEL", "INFO").upper()

# Dense simulation is 2^n complex amplitudes; refuse beyond this
STATEVECTOR_MAX_QUBITS: int = int(os.environ.get("STATEVECTOR_MAX_QUBITS", "14"))

# Pauli propagation gives up once this many live branches exist
PAULIPROP_MAX_TERMS: int = int(os.environ.get("PAULIPROP_MAX_TERMS", str(2**20)))

# Exhaustive Clifford-point enumeration visits 4^m points
CLIFFORD_ENUMERATION_MAX_PARAMS: int = int(os.environ.get("CLIFFORD_ENUMERATION_MAX_PARAMS", "10"))

# Full Hessians are only built up to this many parameters
HESSIAN_CAP: int = int(os.environ.get("HESSIAN_CAP", "128"))

# Values at or below this magnitude count as exactly zero
ZERO_TOLERANCE: float = float(os.environ.get("ZERO_TOLERANCE", "1e-12"))

# Pauli-propagation branches below this magnitude are dropped
PRUNE_TOLERANCE: float = float(os.environ.get("PRUNE_TOLERANCE", "1e-15"))

# m <= factor * n^2 keeps circuits polynomial in size
MAX_PARAMS_PER_QUBIT_SQUARED: int = int(os.environ.get("MAX_PARAMS_PER_QUBIT_SQUARED", "64"))

# Initial stabilizer state: zero, plus, ghz or a generator list such as "+XX,+ZZ"
STABILIZER_STATE: str = os.environ.get("STABILIZER_STATE", "zero")

DEFAULT_THREADS: int = int(os.environ.get("DEFAULT_THREADS", "1"))
