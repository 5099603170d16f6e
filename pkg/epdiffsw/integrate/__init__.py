"""
EPDiff-SW - Time integration

Classical RK4 stepping, initial conditions, per-model formulations,
diagnostics and the run driver.
"""

from .rk4 import rk4_step
from .initial_conditions import (
    gaussian_ic,
    max_mode_index,
    peakon_ic,
    periodic_peakon_profile,
    random_smooth_ic,
)
from .diagnostics import (
    build_record,
    cfl_time_step,
    crest_position,
    estimate_crest_speed,
    relative_drift,
)
from .formulations import (
    BaseFormulation,
    EPDiffAdvectiveFormulation,
    EPDiffCurlFormulation,
    FormulationFactory,
    SWMomentumFormulation,
    SWPrimitiveFormulation,
    get_formulation,
)
from .runner import RunResult, Snapshot, run

__all__ = [
    "rk4_step",
    "gaussian_ic",
    "max_mode_index",
    "peakon_ic",
    "periodic_peakon_profile",
    "random_smooth_ic",
    "build_record",
    "cfl_time_step",
    "crest_position",
    "estimate_crest_speed",
    "relative_drift",
    "BaseFormulation",
    "EPDiffAdvectiveFormulation",
    "EPDiffCurlFormulation",
    "FormulationFactory",
    "SWMomentumFormulation",
    "SWPrimitiveFormulation",
    "get_formulation",
    "RunResult",
    "Snapshot",
    "run",
]
