"""
Parameterized Clifford circuits and parameter points.
"""
import math
from dataclasses import dataclass
from functools import cached_property

from app.core import config
from app.core.errors import CircuitError
from app.features.clifford_engine.models import CliffordGate
from app.features.pauli_core.models import PauliString

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, slots=True)
class Rotation:
    """exp(-i G phi_k / 2) with a Hermitian Pauli generator G and parameter index k."""
    generator: PauliString
    param_index: int

    @property
    def text(self) -> str:
        return f"ROT {self.generator.label} {self.param_index}"


Op = CliffordGate | Rotation


@dataclass(frozen=True)
class ParamCircuit:
    """
    Constant Clifford gates and Pauli rotations, applied in list order.

    Every parameter index 0..m-1 is used by exactly one rotation; correlated
    parameters are not representable.
    """
    n: int
    ops: tuple[Op, ...]

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        if self.n < 1:
            raise CircuitError(f"a circuit needs at least one qubit, got n={self.n}")
        indices = []
        for op in self.ops:
            if isinstance(op, CliffordGate):
                op.check(self.n)
            elif isinstance(op, Rotation):
                if op.generator.n != self.n:
                    raise CircuitError(f"generator {op.generator.label} does not act on {self.n} qubits")
                if not op.generator.is_hermitian:
                    raise CircuitError(f"generator {op.generator.label} is not Hermitian")
                indices.append(op.param_index)
            else:
                raise CircuitError(f"unsupported operation {op!r}")
        if sorted(indices) != list(range(len(indices))):
            raise CircuitError("every parameter index 0..m-1 must appear exactly once")
        cap = config.MAX_PARAMS_PER_QUBIT_SQUARED * self.n * self.n
        if len(indices) > cap:
            raise CircuitError(f"{len(indices)} parameters exceed the cap of {cap} for n={self.n}")

    @cached_property
    def m(self) -> int:
        return sum(1 for op in self.ops if isinstance(op, Rotation))

    @cached_property
    def rotations(self) -> tuple[Rotation, ...]:
        """Rotations ordered by parameter index."""
        found = [op for op in self.ops if isinstance(op, Rotation)]
        return tuple(sorted(found, key=lambda r: r.param_index))

    @cached_property
    def generators(self) -> tuple[PauliString, ...]:
        return tuple(r.generator for r in self.rotations)

    def __len__(self) -> int:
        return len(self.ops)


@dataclass(frozen=True, slots=True)
class ParamPoint:
    """Real angles, one per parameter, interpreted mod 2 pi."""
    angles: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "angles", tuple(float(a) for a in self.angles))

    @property
    def m(self) -> int:
        return len(self.angles)

    def reduced(self) -> tuple[float, ...]:
        return tuple(a % TWO_PI for a in self.angles)

    def shifted(self, index: int, delta: float) -> "ParamPoint":
        angles = list(self.angles)
        angles[index] += delta
        return ParamPoint(tuple(angles))

    def to_param_point(self) -> "ParamPoint":
        return self


@dataclass(frozen=True, slots=True)
class CliffordPoint:
    """Quarter turns k in {0,1,2,3}, angle k*pi/2, kept as integers end to end."""
    quarters: tuple[int, ...]

    def __post_init__(self):
        quarters = tuple(int(k) % 4 for k in self.quarters)
        object.__setattr__(self, "quarters", quarters)

    @classmethod
    def zeros(cls, m: int) -> "CliffordPoint":
        return cls((0,) * m)

    @property
    def m(self) -> int:
        return len(self.quarters)

    @property
    def angles(self) -> tuple[float, ...]:
        return tuple(k * math.pi / 2 for k in self.quarters)

    def shifted(self, index: int, quarters: int) -> "CliffordPoint":
        values = list(self.quarters)
        values[index] += quarters
        return CliffordPoint(tuple(values))

    def to_param_point(self) -> ParamPoint:
        return ParamPoint(self.angles)


Point = ParamPoint | CliffordPoint


@dataclass(frozen=True, slots=True)
class SplitPoint:
    """A Clifford base point with its parameters split into fixed and free sets."""
    base: CliffordPoint
    fixed_indices: frozenset[int]
    free_indices: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "fixed_indices", frozenset(self.fixed_indices))
        object.__setattr__(self, "free_indices", frozenset(self.free_indices))
        if self.fixed_indices & self.free_indices:
            raise CircuitError("fixed and free parameter sets overlap")
        if self.fixed_indices | self.free_indices != frozenset(range(self.base.m)):
            raise CircuitError("fixed and free parameter sets must cover every parameter")

    @classmethod
    def all_free(cls, base: CliffordPoint) -> "SplitPoint":
        return cls(base, frozenset(), frozenset(range(base.m)))

    @property
    def free_order(self) -> tuple[int, ...]:
        """Free indices in ascending order, the order free values are given in."""
        return tuple(sorted(self.free_indices))

    @property
    def fixed_order(self) -> tuple[int, ...]:
        return tuple(sorted(self.fixed_indices))


def restrict(point: CliffordPoint | None, split: SplitPoint, free_values) -> Point:
    """
    Overwrite the free coordinates of a base point.

    Fixed coordinates come from `point` (normally `split.base`; None means
    `split.base`). Integer free values keep the result a CliffordPoint, real
    values produce a ParamPoint. Values are matched to free indices in
    ascending index order.
    """
    base = split.base if point is None else point
    values = list(free_values)
    order = split.free_order
    if len(values) != len(order):
        raise CircuitError(f"{len(values)} free values for {len(order)} free parameters")
    if all(isinstance(v, int) or getattr(v, "dtype", None) is not None and v.dtype.kind in "iu" for v in values):
        quarters = list(base.quarters)
        for index, value in zip(order, values):
            quarters[index] = int(value)
        return CliffordPoint(tuple(quarters))
    angles = list(base.angles)
    for index, value in zip(order, values):
        angles[index] = float(value)
    return ParamPoint(tuple(angles))
