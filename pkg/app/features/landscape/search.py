"""
Null directions and the greedy siloed-minimum search.

A parameter k is a null direction of P at a Clifford point when the generator
of rotation k commutes with P propagated back through everything after k; the
loss is then flat in phi_k, and jointly flat in all null directions at once.
"""
from concurrent.futures import ThreadPoolExecutor

from app.core.defaults import derive_seed
from app.core.errors import CircuitError
from app.features.circuit_model.models import CliffordPoint, ParamCircuit, SplitPoint, restrict
from app.features.circuit_model.sampling import SampleMode, sample_values
from app.features.clifford_engine.conjugation import conj_gate, conj_rotation_quarter
from app.features.clifford_engine.models import CliffordGate
from app.features.clifford_engine.stabilizer import StabilizerState
from app.features.evaluators.clifford import eval_clifford_many
from app.features.landscape.models import CriticalPoint, PauliMinimum, SearchStage
from app.features.landscape.schemas import SearchBudget
from app.features.pauli_core.basis import SymplecticBasis, span_contains, span_insert
from app.features.pauli_core.models import PauliString, commutes
from app.utils import get_logger

logger = get_logger(__name__)


def null_directions(circuit: ParamCircuit, point: CliffordPoint, pauli: PauliString) -> frozenset[int]:
    """Indices k whose generator commutes with P propagated through all ops after rotation k."""
    if len(point.quarters) != circuit.m:
        raise CircuitError(f"point assigns {len(point.quarters)} parameters, circuit has {circuit.m}")
    null = set()
    current = pauli
    for op in reversed(circuit.ops):
        if isinstance(op, CliffordGate):
            current = conj_gate(op, current)
            continue
        if commutes(op.generator, current):
            null.add(op.param_index)
        current = conj_rotation_quarter(op.generator, point.quarters[op.param_index], current)
    return frozenset(null)


def common_null_directions(circuit: ParamCircuit, point: CliffordPoint, paulis) -> frozenset[int]:
    null = frozenset(range(circuit.m))
    for pauli in paulis:
        null &= null_directions(circuit, point, pauli)
    return null


def find_pauli_minimum(
    circuit: ParamCircuit,
    family: list[PauliString],
    split: SplitPoint,
    budget: SearchBudget,
    seed: int,
    exclude: SymplecticBasis | None = None,
    start: int = 0,
    state: StabilizerState | None = None,
    threads: int = 1,
) -> PauliMinimum | None:
    """
    Sample Clifford completions of the free coordinates until some family
    member evaluates to exactly -1.

    Fixed coordinates keep their base values. Members in the span of `exclude`
    are skipped. Sample indices run from `start` up to the per-stage budget;
    ties at one point go to the first member in family order.
    """
    order = split.free_order
    if not order:
        return None
    candidates = [p for p in family if exclude is None or not span_contains(exclude, p)]
    if not candidates:
        return None

    def attempt(index: int) -> PauliMinimum | None:
        values = sample_values(len(order), seed, index, SampleMode.clifford)
        point = restrict(None, split, values)
        for pauli, value in zip(candidates, eval_clifford_many(circuit, candidates, point, state)):
            if value == -1:
                return PauliMinimum(pauli, point, index)
        return None

    indices = range(start, budget.samples_per_stage)
    if threads <= 1:
        for index in indices:
            found = attempt(index)
            if found is not None:
                return found
        return None
    # batches keep the first hit in index order independent of scheduling
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for batch_start in range(start, budget.samples_per_stage, threads):
            batch = range(batch_start, min(batch_start + threads, budget.samples_per_stage))
            for found in pool.map(attempt, batch):
                if found is not None:
                    return found
    return None


def greedy_siloed_search(
    circuit: ParamCircuit,
    family: list[PauliString],
    budget: SearchBudget,
    seed: int | None = None,
    state: StabilizerState | None = None,
    threads: int = 1,
) -> CriticalPoint:
    """
    Optimize family members one at a time inside the null directions of the
    ones already optimized.

    After each hit the free set becomes the common null set of all optimized
    Paulis at the new point, and the rest is fixed. A hit that leaves every
    free direction null is kept as absorbed and opens no stage. Stops when the
    budget of a stage is exhausted, the free set is empty or `stage_cap`
    stages have run.
    """
    seed = budget.seed if seed is None else seed
    split = SplitPoint.all_free(CliffordPoint.zeros(circuit.m))
    optimized: list[PauliString] = []
    basis = SymplecticBasis.empty(circuit.n)
    history: list[SearchStage] = []
    absorbed: list[PauliString] = []
    start = 0
    while len(history) < budget.stage_cap and split.free_indices:
        stage_seed = derive_seed(seed, len(history))
        found = find_pauli_minimum(
            circuit, family, split, budget, stage_seed, exclude=basis, start=start, state=state, threads=threads
        )
        if found is None:
            logger.debug("stage %d: budget of %d samples exhausted", len(history), budget.samples_per_stage)
            break
        _, basis = span_insert(basis, found.pauli)
        optimized.append(found.pauli)
        null = split.free_indices & common_null_directions(circuit, found.point, optimized)
        if null == split.free_indices:
            # flat over the free set, so it sits at -1 on the current base point too
            absorbed.append(found.pauli)
            start = found.sample_index + 1
            logger.debug("stage %d: absorbed %s", len(history), found.pauli.label)
            continue
        history.append(SearchStage(found.pauli, split.free_indices, null))
        logger.debug(
            "stage %d: %s fixes %d of %d free directions",
            len(history) - 1, found.pauli.label, len(split.free_indices) - len(null), len(split.free_indices),
        )
        split = SplitPoint(found.point, frozenset(range(circuit.m)) - null, null)
        start = 0
    return CriticalPoint(split, tuple(optimized), basis, tuple(history), tuple(absorbed))


def independent_remainder(family: list[PauliString], critical: CriticalPoint) -> list[PauliString]:
    """Family members outside the span of the optimized Paulis."""
    return [p for p in family if not span_contains(critical.basis, p)]
