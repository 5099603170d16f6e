"""
EPDiff-SW - Run Diagnostics
Conserved-quantity records, crest tracking and the CFL guideline
"""

from typing import Optional, Sequence

import numpy as np

from epdiffsw.core.exceptions import DimensionMismatchError
from epdiffsw.schemas import DiagnosticsRecord
from epdiffsw.spectral import ScalarField, VectorField, inner


def build_record(
    step: int,
    t: float,
    hamiltonian: float,
    momentum: VectorField,
    velocity: VectorField,
    mass: Optional[float] = None,
) -> DiagnosticsRecord:
    """Assemble one DiagnosticsRecord from the state's momentum and velocity"""
    totals = [c.integral() for c in momentum]
    return DiagnosticsRecord(
        step=step,
        t=t,
        hamiltonian=hamiltonian,
        mass=mass,
        momentum_x=totals[0],
        momentum_y=totals[1] if len(totals) > 1 else None,
        max_speed=velocity.norm().max_abs(),
        l2_m=float(np.sqrt(inner(momentum, momentum))),
    )


def relative_drift(initial: float, final: float) -> float:
    """|final - initial| / |initial|, falling back to the absolute change near zero"""
    scale = abs(initial)
    change = abs(final - initial)
    return change / scale if scale > 1e-300 else change


def crest_position(u: ScalarField) -> float:
    """
    Location of max(u) on a 1-D periodic grid

    The grid argmax is refined by a parabola through it and its two periodic
    neighbours; the result is wrapped into [0, L).
    """
    if u.grid.dim != 1:
        raise DimensionMismatchError("crest tracking needs a 1-D field")
    values = u.values
    n = values.size
    j = int(np.argmax(values))
    left, mid, right = values[(j - 1) % n], values[j], values[(j + 1) % n]
    curvature = left - 2.0 * mid + right
    offset = 0.5 * (left - right) / curvature if curvature != 0.0 else 0.0
    offset = float(np.clip(offset, -0.5, 0.5))
    dx = u.grid.spacings[0]
    return float(((j + offset) * dx) % u.grid.lengths[0])


def estimate_crest_speed(
    times: Sequence[float], positions: Sequence[float], length: float
) -> float:
    """
    Least-squares speed of a crest trajectory on a periodic domain

    Positions are unwrapped assuming the crest moves less than L/2 between samples.
    """
    times_arr = np.asarray(times, dtype=np.float64)
    positions_arr = np.asarray(positions, dtype=np.float64)
    if times_arr.size < 2 or times_arr.size != positions_arr.size:
        raise ValueError("need at least two (time, position) samples of equal length")
    phase = np.unwrap(positions_arr * (2.0 * np.pi / length))
    unwrapped = phase * (length / (2.0 * np.pi))
    slope, _ = np.polyfit(times_arr, unwrapped, 1)
    return float(slope)


def cfl_time_step(
    velocity: VectorField,
    eta: Optional[ScalarField] = None,
    g: float = 0.0,
    safety: float = 0.5,
) -> float:
    """
    Guideline dt <= safety * min(dx) / max(|u| + sqrt(g max eta))

    Returns inf for a state at rest without gravity waves.
    """
    wave_speed = 0.0
    if eta is not None and g > 0:
        wave_speed = float(np.sqrt(g * max(float(eta.values.max()), 0.0)))
    signal = velocity.norm().max_abs() + wave_speed
    if signal == 0.0:
        return float("inf")
    return safety * min(velocity.grid.spacings) / signal
