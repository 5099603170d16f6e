"""
Classical Runge-Kutta Time Stepping

rk4_step works on any state exposing pack() / unpack(array) together with a
right-hand side returning a Tendency. Plain numpy arrays (and floats) are
accepted too, with the right-hand side returning an array of the same shape.
"""

from typing import Any, Callable, Optional, TypeVar

import numpy as np

from epdiffsw.core.exceptions import NonFiniteStateError
from epdiffsw.dynamics import Tendency

StateT = TypeVar("StateT")
RhsFn = Callable[[Any], Any]


def _pack(state: Any) -> np.ndarray:
    if isinstance(state, (np.ndarray, float, int, np.floating)):
        return np.asarray(state, dtype=np.float64)
    return state.pack()


def _values(tendency: Any) -> np.ndarray:
    if isinstance(tendency, Tendency):
        return tendency.values
    return np.asarray(tendency, dtype=np.float64)


def rk4_step(state: StateT, rhs_fn: RhsFn, dt: float, step: Optional[int] = None) -> StateT:
    """
    Advance `state` by one classical four-stage Runge-Kutta step

    Args:
        state: State with pack/unpack, or a numpy array / float
        rhs_fn: Tendency of a state
        dt: Time step, must be positive
        step: Index of the step being taken; reported when the update fails

    Returns:
        New state of the same type

    Raises:
        ValueError: dt <= 0
        NonFiniteStateError: a stage or the update contains NaN/Inf
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")

    y0 = _pack(state)

    def rebuild(array: np.ndarray):
        if not np.all(np.isfinite(array)):
            raise NonFiniteStateError(step, "stage state is not finite")
        if isinstance(state, np.ndarray):
            return array
        if isinstance(state, (float, int, np.floating)):
            return float(array)
        return state.unpack(array)  # type: ignore[attr-defined]

    def evaluate(s) -> np.ndarray:
        k = _values(rhs_fn(s))
        if not np.all(np.isfinite(k)):
            raise NonFiniteStateError(step, "tendency is not finite")
        return k

    try:
        k1 = evaluate(state)
        k2 = evaluate(rebuild(y0 + 0.5 * dt * k1))
        k3 = evaluate(rebuild(y0 + 0.5 * dt * k2))
        k4 = evaluate(rebuild(y0 + dt * k3))
        return rebuild(y0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
    except NonFiniteStateError as exc:
        if exc.step is None and step is not None:
            raise NonFiniteStateError(step, "field values must be finite") from exc
        raise
