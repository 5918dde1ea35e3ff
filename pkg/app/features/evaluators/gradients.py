"""
Engine dispatch and parameter-shift derivatives.

Every generator is a Pauli, so L is trigonometric of degree one in each angle
and the shift rule dL/dphi_k = [L(phi + pi/2 e_k) - L(phi - pi/2 e_k)] / 2 is
exact. At Clifford points the shifted points are Clifford points again.
"""
import math
from collections.abc import Callable
from enum import Enum

import numpy as np

from app.core import config
from app.core.errors import CircuitError, EngineCapExceeded
from app.features.circuit_model.models import CliffordPoint, ParamCircuit, ParamPoint, Point
from app.features.clifford_engine.stabilizer import StabilizerState
from app.features.evaluators.clifford import eval_clifford
from app.features.evaluators.pauliprop import eval_pauliprop
from app.features.evaluators.statevector import eval_statevector
from app.features.pauli_core.models import Observable

HALF_PI = 0.5 * math.pi


class Engine(str, Enum):
    clifford = "clifford"
    statevector = "statevector"
    pauliprop = "pauliprop"


def evaluate(
    engine: Engine,
    circuit: ParamCircuit,
    observable: Observable,
    point: Point,
    state: StabilizerState | None = None,
) -> float:
    engine = Engine(engine)
    if engine is Engine.clifford:
        if not isinstance(point, CliffordPoint):
            raise CircuitError("the Clifford engine only evaluates CliffordPoints")
        return eval_clifford(circuit, observable, point, state)
    if engine is Engine.statevector:
        return eval_statevector(circuit, observable, point, state)
    return eval_pauliprop(circuit, observable, point, state)


def _shift(point: Point, index: int, sign: int) -> Point:
    if not 0 <= index < point.m:
        raise CircuitError(f"parameter index {index} out of range for m={point.m}")
    if isinstance(point, CliffordPoint):
        return point.shifted(index, sign)
    return point.shifted(index, sign * HALF_PI)


def gradient_shift(
    engine: Engine,
    circuit: ParamCircuit,
    observable: Observable,
    point: Point,
    index: int,
    state: StabilizerState | None = None,
) -> float:
    plus = evaluate(engine, circuit, observable, _shift(point, index, +1), state)
    minus = evaluate(engine, circuit, observable, _shift(point, index, -1), state)
    return 0.5 * (plus - minus)


def hessian_shift(
    engine: Engine,
    circuit: ParamCircuit,
    observable: Observable,
    point: Point,
    k: int,
    l: int,
    state: StabilizerState | None = None,
) -> float:
    """d2L / dphi_k dphi_l from four doubly shifted evaluations (also valid for k == l)."""
    total = 0.0
    for sign_k in (+1, -1):
        for sign_l in (+1, -1):
            shifted = _shift(_shift(point, k, sign_k), l, sign_l)
            total += sign_k * sign_l * evaluate(engine, circuit, observable, shifted, state)
    return 0.25 * total


def gradient_vector(
    engine: Engine,
    circuit: ParamCircuit,
    observable: Observable,
    point: Point,
    state: StabilizerState | None = None,
) -> np.ndarray:
    return np.array([gradient_shift(engine, circuit, observable, point, k, state) for k in range(circuit.m)])


def hessian_matrix(
    engine: Engine,
    circuit: ParamCircuit,
    observable: Observable,
    point: Point,
    state: StabilizerState | None = None,
    cap: int | None = None,
) -> np.ndarray:
    """Symmetric m x m Hessian; refused above `cap` (default HESSIAN_CAP) parameters."""
    m = circuit.m
    cap = config.HESSIAN_CAP if cap is None else cap
    if m > cap:
        raise EngineCapExceeded(f"Hessian of {m} parameters exceeds the cap of {cap}")
    hessian = np.zeros((m, m))
    for k in range(m):
        for l in range(k, m):
            hessian[k, l] = hessian[l, k] = hessian_shift(engine, circuit, observable, point, k, l, state)
    return hessian


def single_angle_coefficients(loss: Callable[[float], float]) -> tuple[float, float, float]:
    """
    (a, b, c) with loss(theta) = a + b cos(theta) + c sin(theta), read off
    at theta = 0, pi/2 and pi.
    """
    at_zero, at_quarter, at_half = loss(0.0), loss(HALF_PI), loss(math.pi)
    a = 0.5 * (at_zero + at_half)
    return a, 0.5 * (at_zero - at_half), at_quarter - a


def angle_restriction(
    engine: Engine,
    circuit: ParamCircuit,
    observable: Observable,
    point: ParamPoint | CliffordPoint,
    index: int,
    state: StabilizerState | None = None,
) -> Callable[[float], float]:
    """theta -> L at `point` with angle `index` replaced by theta."""
    engine = Engine(engine)
    base = point.to_param_point()

    def loss(theta: float) -> float:
        if engine is Engine.clifford:
            turns = round(theta / HALF_PI)
            if abs(turns * HALF_PI - theta) > 1e-12 or not isinstance(point, CliffordPoint):
                raise CircuitError("the Clifford engine only evaluates quarter turns")
            quarters = list(point.quarters)
            quarters[index] = turns
            return evaluate(engine, circuit, observable, CliffordPoint(tuple(quarters)), state)
        angles = list(base.angles)
        angles[index] = theta
        return evaluate(engine, circuit, observable, ParamPoint(tuple(angles)), state)

    return loss
