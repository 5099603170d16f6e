"""
EPDiff-SW - Run Orchestration
Initialize, step with RK4, emit diagnostics and snapshots, abort cleanly
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import structlog

from epdiffsw.core.exceptions import NonFiniteStateError, SurfaceFloorError
from epdiffsw.integrate.diagnostics import relative_drift
from epdiffsw.integrate.formulations import BaseFormulation, get_formulation
from epdiffsw.integrate.rk4 import rk4_step
from epdiffsw.schemas import DiagnosticsRecord, RunConfig
from epdiffsw.spectral import Grid, ScalarField

logger = structlog.get_logger()


@dataclass(frozen=True)
class Snapshot:
    """Named fields of the state at one output step"""

    step: int
    t: float
    fields: Dict[str, ScalarField]


@dataclass
class RunResult:
    """Everything a run produced, including where it stopped if it aborted"""

    config: RunConfig
    grid: Grid
    records: List[DiagnosticsRecord] = field(default_factory=list)
    snapshots: List[Snapshot] = field(default_factory=list)
    aborted_step: Optional[int] = None
    abort_reason: Optional[str] = None

    @property
    def aborted(self) -> bool:
        return self.aborted_step is not None

    def drift(self, quantity: str) -> Optional[float]:
        """Relative change of a record attribute between first and last record"""
        if not self.records:
            return None
        first = getattr(self.records[0], quantity)
        last = getattr(self.records[-1], quantity)
        if first is None or last is None:
            return None
        return relative_drift(first, last)


OutputCallback = Callable[[DiagnosticsRecord, Snapshot], None]


def _emit(
    formulation: BaseFormulation,
    state,
    step: int,
    t: float,
    result: RunResult,
    on_output: Optional[OutputCallback],
) -> None:
    record = formulation.diagnostics(state, step, t)
    snapshot = Snapshot(step=step, t=t, fields=formulation.snapshot_fields(state))
    result.records.append(record)
    result.snapshots.append(snapshot)
    if on_output is not None:
        on_output(record, snapshot)


def run(config: RunConfig, on_output: Optional[OutputCallback] = None) -> RunResult:
    """
    Integrate `config` from t = 0 to t_end with fixed-step RK4

    Diagnostics and snapshots are emitted at step 0, every output_every
    steps and at the final step. Time is computed as step * dt so runs are
    bit-reproducible.

    Args:
        config: Validated run configuration
        on_output: Called with each (record, snapshot) as it is produced

    Returns:
        RunResult; on NaN/Inf or an eta-floor violation the result carries
        aborted_step and abort_reason instead of raising
    """
    formulation = get_formulation(config)
    result = RunResult(config=config, grid=formulation.grid)
    num_steps = config.num_steps
    log = formulation.logger.bind(steps=num_steps, dt=config.dt)

    state = formulation.initial_state()
    cfl_dt = formulation.cfl_time_step(state)
    log.info("run_started", t_end=config.t_end, cfl_dt=cfl_dt, dealias=config.dealias)
    if config.dt > cfl_dt:
        log.warning("time_step_above_cfl_guideline", cfl_dt=cfl_dt)

    _emit(formulation, state, 0, 0.0, result, on_output)

    for step in range(1, num_steps + 1):
        try:
            state = rk4_step(state, formulation.rhs, config.dt, step=step)
        except NonFiniteStateError as exc:
            reason = str(exc)
            result.aborted_step, result.abort_reason = step, reason
            log.error("run_aborted", step=step, reason=reason)
            return result
        except SurfaceFloorError as exc:
            reason = f"eta floor violated at step {step}: {exc}"
            result.aborted_step, result.abort_reason = step, reason
            log.error("run_aborted", step=step, reason=reason)
            return result

        if step % config.output_every == 0 or step == num_steps:
            _emit(formulation, state, step, step * config.dt, result, on_output)

    log.info(
        "run_completed",
        records=len(result.records),
        hamiltonian_drift=result.drift("hamiltonian"),
        mass_drift=result.drift("mass"),
    )
    return result
