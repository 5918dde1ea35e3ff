"""Deterministic sampling of parameter points."""
import math
from enum import Enum

from app.core.defaults import rng_for
from app.features.circuit_model.models import CliffordPoint, ParamPoint


class SampleMode(str, Enum):
    uniform = "uniform"
    clifford = "clifford"


def sample_point(m: int, seed: int, index: int, mode: SampleMode) -> ParamPoint | CliffordPoint:
    """
    Draw sample `index` of the stream identified by `seed`.

    Uniform mode draws every angle from [0, 2 pi); Clifford mode draws every
    quarter uniformly from {0, 1, 2, 3}. The result depends on (seed, index)
    only, so samples can be produced in any order or thread.
    """
    rng = rng_for(seed, index)
    if SampleMode(mode) is SampleMode.uniform:
        return ParamPoint(tuple(rng.uniform(0.0, 2.0 * math.pi, size=m)))
    return CliffordPoint(tuple(int(k) for k in rng.integers(0, 4, size=m)))


def sample_values(count: int, seed: int, index: int, mode: SampleMode) -> list:
    """Free-coordinate values: ints for Clifford mode, floats for uniform mode."""
    point = sample_point(count, seed, index, mode)
    if isinstance(point, CliffordPoint):
        return list(point.quarters)
    return list(point.angles)
