"""
Variance statistics of single-Pauli losses over sampled parameter points.

Each sample depends only on (seed, sample index), and reductions run over
arrays in index order, so results do not depend on the thread count.
"""
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from app.core.defaults import rng_for
from app.core.errors import CircuitError, ConfigError
from app.features.circuit_model.models import CliffordPoint, ParamCircuit
from app.features.circuit_model.sampling import SampleMode, sample_point
from app.features.clifford_engine.stabilizer import StabilizerState
from app.features.evaluators.clifford import eval_clifford_many
from app.features.evaluators.gradients import Engine, gradient_shift
from app.features.evaluators.schemas import VarianceMode, VarianceReport
from app.features.evaluators.statevector import expectation, simulate
from app.features.pauli_core.models import Observable, PauliString
from app.utils import get_logger

logger = get_logger(__name__)


def _map(fn, items, threads: int) -> list:
    if threads <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def sample_matrix(
    circuit: ParamCircuit,
    family: list[PauliString],
    samples: int,
    seed: int,
    mode: SampleMode,
    state: StabilizerState | None = None,
    threads: int = 1,
) -> np.ndarray:
    """
    samples x |family| matrix of single-Pauli loss values.

    Clifford rows come from one tableau sweep per point (exact integers);
    uniform rows from one statevector simulation per point.
    """
    mode = SampleMode(mode)

    def row(index: int) -> list[float]:
        point = sample_point(circuit.m, seed, index, mode)
        if mode is SampleMode.clifford:
            return eval_clifford_many(circuit, family, point, state)
        psi = simulate(circuit, point, state)
        return [expectation(psi, pauli) for pauli in family]

    rows = _map(row, range(samples), threads)
    return np.array(rows, dtype=float).reshape(samples, len(family))


def mean_and_variance(values: np.ndarray) -> tuple[float | None, float | None]:
    """Sample mean and unbiased (N-1) variance; variance is None below two samples."""
    if values.size == 0:
        return None, None
    mean = float(np.mean(values))
    if values.size < 2:
        return mean, None
    return mean, float(np.var(values, ddof=1))


def _reports(
    family: list[PauliString],
    values: np.ndarray,
    mode: VarianceMode,
    excluding_self: list[float | None] | None = None,
) -> list[VarianceReport]:
    reports = []
    for j, pauli in enumerate(family):
        column = values[:, j]
        mean, variance = mean_and_variance(column)
        reports.append(VarianceReport(
            observable=pauli.label,
            mode=mode,
            sample_count=int(column.size),
            mean=mean,
            variance=variance,
            variance_excluding_self=None if excluding_self is None else excluding_self[j],
            nonzero_fraction=None if mode is VarianceMode.uniform or column.size == 0
            else float(np.count_nonzero(column) / column.size),
            status="ok" if column.size else "empty",
        ))
    return reports


def conditioned_reports(family: list[PauliString], values: np.ndarray) -> list[VarianceReport]:
    """
    Statistics over the Clifford samples where at least one family member is non-zero.

    `variance_excluding_self` conditions each column only on the other
    members instead.
    """
    nonzero = values != 0
    kept = values[nonzero.any(axis=1)]
    excluding = []
    for j in range(len(family)):
        others = np.delete(nonzero, j, axis=1).any(axis=1)
        excluding.append(mean_and_variance(values[others, j])[1])
    if kept.shape[0] == 0:
        logger.info("conditioned Clifford set is empty over %d samples", values.shape[0])
    return _reports(family, kept, VarianceMode.clifford_conditioned, excluding)


def variance_scan(
    circuit: ParamCircuit,
    family: list[PauliString],
    samples: int,
    seed: int,
    mode: VarianceMode,
    state: StabilizerState | None = None,
    threads: int = 1,
) -> list[VarianceReport]:
    """
    Per-observable mean and sample variance over `samples` points.

    The conditioned mode reuses the Clifford sample stream of `seed`, so it
    is a subset of the clifford-mode points.
    """
    mode = VarianceMode(mode)
    if not family:
        raise CircuitError("variance scan needs a non-empty observable family")
    if mode is VarianceMode.uniform:
        values = sample_matrix(circuit, family, samples, seed, SampleMode.uniform, state, threads)
        return _reports(family, values, mode)
    values = sample_matrix(circuit, family, samples, seed, SampleMode.clifford, state, threads)
    if mode is VarianceMode.clifford:
        return _reports(family, values, mode)
    return conditioned_reports(family, values)


def family_average(reports: list[VarianceReport]) -> float | None:
    """Mean variance over the family, ignoring members without a variance."""
    variances = [r.variance for r in reports if r.variance is not None]
    if not variances:
        return None
    return float(np.mean(variances))


def chebyshev_check(values, epsilon: float) -> tuple[float, float]:
    """
    (empirical Pr[|L - mean| > epsilon], variance / epsilon^2).

    Chebyshev's inequality says the first is at most the second.
    """
    if epsilon <= 0:
        raise ConfigError(f"epsilon must be positive, got {epsilon}")
    values = np.asarray(values, dtype=float)
    mean, variance = mean_and_variance(values)
    if mean is None or variance is None:
        return 0.0, 0.0
    tail = float(np.count_nonzero(np.abs(values - mean) > epsilon) / values.size)
    return tail, variance / epsilon**2


def derivative_nonzero_fraction(
    circuit: ParamCircuit,
    pauli: PauliString,
    samples: int,
    seed: int,
    state: StabilizerState | None = None,
    tolerance: float = 0.0,
) -> float:
    """
    Fraction of sampled (Clifford point, component) pairs with a non-zero
    gradient, one uniformly chosen component per point.
    """
    if circuit.m == 0 or samples < 1:
        return 0.0
    observable = Observable.single(pauli)
    hits = 0
    for index in range(samples):
        rng = rng_for(seed, index)
        base = CliffordPoint(tuple(int(k) for k in rng.integers(0, 4, size=circuit.m)))
        component = int(rng.integers(0, circuit.m))
        if abs(gradient_shift(Engine.clifford, circuit, observable, base, component, state)) > tolerance:
            hits += 1
    return hits / samples


def clifford_quarter_average(loss) -> float:
    """(F(0) + F(pi/2) + F(pi) + F(3 pi/2)) / 4 for a single-angle restriction F."""
    return math.fsum(loss(k * 0.5 * math.pi) for k in range(4)) / 4.0
