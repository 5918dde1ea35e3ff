"""
Checks on critical points: exact vanishing of remainder losses and their
gradients, and the approximate local-minimum test at Clifford points.
"""
import math

import numpy as np

from app.core import config
from app.core.defaults import rng_for
from app.features.circuit_model.models import CliffordPoint, ParamCircuit, restrict
from app.features.circuit_model.sampling import SampleMode, sample_values
from app.features.clifford_engine.stabilizer import StabilizerState
from app.features.evaluators.gradients import HALF_PI, Engine, gradient_vector, hessian_matrix
from app.features.evaluators.statevector import expectation, simulate
from app.features.landscape.models import CriticalPoint
from app.features.landscape.schemas import ApproxLMReport, Verdict
from app.features.pauli_core.models import Observable, PauliString
from app.utils import get_logger

logger = get_logger(__name__)


def _uniform_completion(critical: CriticalPoint, seed: int, index: int):
    values = sample_values(len(critical.split.free_order), seed, index, SampleMode.uniform)
    return restrict(None, critical.split, values).to_param_point()


def exact_zero_flags(
    circuit: ParamCircuit,
    critical: CriticalPoint,
    paulis: list[PauliString],
    samples: int,
    seed: int,
    state: StabilizerState | None = None,
) -> list[bool]:
    """Per Pauli: |L_P| <= ZERO_TOLERANCE at every uniform completion (statevector engine)."""
    flags = [True] * len(paulis)
    for index in range(samples):
        psi = simulate(circuit, _uniform_completion(critical, seed, index), state)
        for j, pauli in enumerate(paulis):
            if flags[j] and abs(expectation(psi, pauli)) > config.ZERO_TOLERANCE:
                flags[j] = False
    return flags


def verify_exact_zero(
    circuit: ParamCircuit,
    critical: CriticalPoint,
    pauli: PauliString,
    samples: int = 10,
    seed: int = 0,
    state: StabilizerState | None = None,
) -> bool:
    return exact_zero_flags(circuit, critical, [pauli], samples, seed, state)[0]


def gradient_vanish_fractions(
    circuit: ParamCircuit,
    critical: CriticalPoint,
    paulis: list[PauliString],
    component_budget: int,
    seed: int,
    state: StabilizerState | None = None,
) -> list[float | None]:
    """
    Per Pauli, the fraction of checked fixed-coordinate gradient components
    that vanish to ZERO_TOLERANCE.

    Up to `component_budget` fixed indices are drawn without replacement; each
    is checked by parameter shift at its own uniform completion of the free
    coordinates, sharing the two shifted simulations across all Paulis. None
    when there is no fixed coordinate to check.
    """
    fixed = np.array(critical.split.fixed_order, dtype=np.int64)
    count = min(component_budget, fixed.size)
    if count <= 0:
        return [None] * len(paulis)
    components = rng_for(seed, 0).choice(fixed, size=count, replace=False)
    vanished = np.zeros(len(paulis), dtype=np.int64)
    for j, component in enumerate(components):
        point = _uniform_completion(critical, seed, j + 1)
        plus = simulate(circuit, point.shifted(int(component), HALF_PI), state)
        minus = simulate(circuit, point.shifted(int(component), -HALF_PI), state)
        for i, pauli in enumerate(paulis):
            gradient = 0.5 * (expectation(plus, pauli) - expectation(minus, pauli))
            if abs(gradient) <= config.ZERO_TOLERANCE:
                vanished[i] += 1
    return [float(v / count) for v in vanished]


def verify_gradients_vanish(
    circuit: ParamCircuit,
    critical: CriticalPoint,
    pauli: PauliString,
    component_budget: int,
    seed: int = 0,
    state: StabilizerState | None = None,
) -> float | None:
    return gradient_vanish_fractions(circuit, critical, [pauli], component_budget, seed, state)[0]


def approximate_lm_check(
    circuit: ParamCircuit,
    observable: Observable,
    point: CliffordPoint,
    epsilon: float,
    hessian_cap: int | None = None,
    state: StabilizerState | None = None,
) -> ApproxLMReport:
    """
    Classify a Clifford point from its exact gradient and, for m <= hessian_cap,
    the minimum eigenvalue of its exact Hessian.

    zero_approx: every gradient and Hessian entry is exactly zero. Needs the
    Hessian, so a gradient-only check gives at most eps_approx.
    eps_approx: max |gradient| <= epsilon and lambda_min >= -sqrt(epsilon).
    """
    hessian_cap = config.HESSIAN_CAP if hessian_cap is None else hessian_cap
    gradient = gradient_vector(Engine.clifford, circuit, observable, point, state)
    max_abs = float(np.max(np.abs(gradient))) if gradient.size else 0.0
    all_zero = False
    min_eigenvalue = None
    if circuit.m <= hessian_cap:
        hessian = hessian_matrix(Engine.clifford, circuit, observable, point, state, cap=hessian_cap)
        all_zero = not np.any(gradient) and not np.any(hessian)
        min_eigenvalue = float(np.linalg.eigvalsh(hessian)[0]) if circuit.m else 0.0
    else:
        logger.warning("m=%d exceeds the Hessian cap %d; gradient-only verdict", circuit.m, hessian_cap)
    if all_zero:
        verdict = Verdict.zero_approx
    elif max_abs <= epsilon and (min_eigenvalue is None or min_eigenvalue >= -math.sqrt(epsilon)):
        verdict = Verdict.eps_approx
    else:
        verdict = Verdict.not_critical
    return ApproxLMReport(
        point=list(point.quarters),
        epsilon=epsilon,
        max_abs_gradient=max_abs,
        min_hessian_eigenvalue=min_eigenvalue,
        components_checked=circuit.m,
        verdict=verdict,
    )
