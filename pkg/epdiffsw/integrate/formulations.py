"""
Formulations - one adapter per evolution model

Each formulation turns a RunConfig into an initial state and exposes the
right-hand side, the diagnostics and the snapshot fields of its model
behind one interface, so the runner never branches on the model kind.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Type

import numpy as np
import structlog

from epdiffsw.core.exceptions import ConfigError
from epdiffsw.dynamics import (
    EPDiffState,
    SWMomentumState,
    SWState,
    Tendency,
    epdiff_hamiltonian,
    epdiff_recover_u,
    epdiff_rhs_1d,
    epdiff_rhs_advective,
    epdiff_rhs_curl,
    sw_hamiltonian,
    sw_rhs_momentum,
    sw_rhs_primitive,
)
from epdiffsw.integrate.diagnostics import build_record, cfl_time_step
from epdiffsw.integrate.initial_conditions import gaussian_ic, peakon_ic, random_smooth_ic
from epdiffsw.operators import apply_L
from epdiffsw.schemas import DiagnosticsRecord, InitialCondition, ModelKind, RunConfig
from epdiffsw.spectral import Grid, ScalarField, VectorField, make_grid

logger = structlog.get_logger()

AXIS_NAMES = ("x", "y")


class BaseFormulation(ABC):
    """
    Abstract base class for run formulations

    Subclasses provide:
    - initial state construction from the config's ic family
    - the model right-hand side (with the config's dealias flag)
    - diagnostics records and named snapshot fields
    """

    model: ModelKind

    def __init__(self, config: RunConfig):
        self.config = config
        self.grid: Grid = make_grid(config.dim, config.sizes, config.lengths)
        self.rng = np.random.default_rng(config.seed)
        self.logger = logger.bind(model=config.model.value, dim=config.dim)

    def _velocity_profiles(self) -> VectorField:
        """Velocity components for the gaussian / random_smooth families"""
        cfg = self.config
        if cfg.ic == InitialCondition.GAUSSIAN:
            bump = gaussian_ic(self.grid, cfg.ic_amplitude, cfg.ic_width, cfg.center)
            rest = [ScalarField.zeros(self.grid) for _ in range(self.grid.dim - 1)]
            return VectorField((bump, *rest))
        return VectorField(
            tuple(
                random_smooth_ic(self.grid, self.rng, cfg.ic_amplitude)
                for _ in range(self.grid.dim)
            )
        )

    @abstractmethod
    def initial_state(self) -> Any:
        """Build the state at t = 0"""
        pass

    @abstractmethod
    def rhs(self, state: Any) -> Tendency:
        """Tendency of `state`"""
        pass

    @abstractmethod
    def velocity(self, state: Any) -> VectorField:
        pass

    @abstractmethod
    def diagnostics(self, state: Any, step: int, t: float) -> DiagnosticsRecord:
        pass

    @abstractmethod
    def snapshot_fields(self, state: Any) -> Dict[str, ScalarField]:
        """Named output fields in file column order"""
        pass

    def cfl_time_step(self, state: Any) -> float:
        return cfl_time_step(self.velocity(state))


class _ShallowWaterFormulation(BaseFormulation):
    """Shared pieces of the two SW formulations"""

    def _initial_fields(self) -> tuple[VectorField, ScalarField]:
        cfg = self.config
        if cfg.ic == InitialCondition.GAUSSIAN:
            bump = gaussian_ic(self.grid, cfg.ic_amplitude, cfg.ic_width, cfg.center)
            return VectorField.zeros(self.grid), cfg.depth + bump
        eta = cfg.depth + random_smooth_ic(self.grid, self.rng, cfg.ic_amplitude)
        return self._velocity_profiles(), eta

    def _record(self, u: VectorField, eta: ScalarField, step: int, t: float) -> DiagnosticsRecord:
        m = u * eta
        return build_record(
            step,
            t,
            hamiltonian=sw_hamiltonian(m, eta, self.config.g),
            momentum=m,
            velocity=u,
            mass=eta.integral(),
        )

    def _fields(self, u: VectorField, eta: ScalarField) -> Dict[str, ScalarField]:
        fields = {f"u_{AXIS_NAMES[i]}": u[i] for i in range(self.grid.dim)}
        fields["eta"] = eta
        return fields

    def cfl_time_step(self, state: Any) -> float:
        return cfl_time_step(self.velocity(state), state.eta, self.config.g)


class SWPrimitiveFormulation(_ShallowWaterFormulation):
    """Shallow water in (u, eta)"""

    model = ModelKind.SW_PRIMITIVE

    def initial_state(self) -> SWState:
        u, eta = self._initial_fields()
        return SWState(u=u, eta=eta, g=self.config.g)

    def rhs(self, state: SWState) -> Tendency:
        return sw_rhs_primitive(state, dealias=self.config.dealias)

    def velocity(self, state: SWState) -> VectorField:
        return state.u

    def diagnostics(self, state: SWState, step: int, t: float) -> DiagnosticsRecord:
        return self._record(state.u, state.eta, step, t)

    def snapshot_fields(self, state: SWState) -> Dict[str, ScalarField]:
        return self._fields(state.u, state.eta)


class SWMomentumFormulation(_ShallowWaterFormulation):
    """Shallow water in the Hamiltonian variables (m = eta u, eta)"""

    model = ModelKind.SW_MOMENTUM

    def initial_state(self) -> SWMomentumState:
        u, eta = self._initial_fields()
        return SWMomentumState(m=u * eta, eta=eta, g=self.config.g)

    def rhs(self, state: SWMomentumState) -> Tendency:
        return sw_rhs_momentum(state.m, state.eta, state.g, dealias=self.config.dealias)

    def velocity(self, state: SWMomentumState) -> VectorField:
        return state.velocity()

    def diagnostics(self, state: SWMomentumState, step: int, t: float) -> DiagnosticsRecord:
        return build_record(
            step,
            t,
            hamiltonian=sw_hamiltonian(state.m, state.eta, state.g),
            momentum=state.m,
            velocity=state.velocity(),
            mass=state.eta.integral(),
        )

    def snapshot_fields(self, state: SWMomentumState) -> Dict[str, ScalarField]:
        return self._fields(state.velocity(), state.eta)


class _EPDiffFormulation(BaseFormulation):
    """Shared pieces of the EPDiff formulations; 1-D runs use the 1-D equation"""

    def initial_state(self) -> EPDiffState:
        cfg = self.config
        op = cfg.operator_params()
        if op is None:
            raise ConfigError(f"model {cfg.model.value} requires alpha and nu", key="alpha")
        if cfg.ic == InitialCondition.PEAKON:
            return peakon_ic(self.grid, cfg.ic_amplitude, op.alpha, cfg.center[0], op=op)
        return EPDiffState(m=apply_L(self._velocity_profiles(), op), op=op)

    def rhs(self, state: EPDiffState) -> Tendency:
        if self.grid.dim == 1:
            return epdiff_rhs_1d(state, dealias=self.config.dealias)
        return self._rhs_2d(state)

    @abstractmethod
    def _rhs_2d(self, state: EPDiffState) -> Tendency:
        pass

    def velocity(self, state: EPDiffState) -> VectorField:
        return epdiff_recover_u(state)

    def diagnostics(self, state: EPDiffState, step: int, t: float) -> DiagnosticsRecord:
        return build_record(
            step,
            t,
            hamiltonian=epdiff_hamiltonian(state),
            momentum=state.m,
            velocity=self.velocity(state),
        )

    def snapshot_fields(self, state: EPDiffState) -> Dict[str, ScalarField]:
        u = self.velocity(state)
        fields = {f"m_{AXIS_NAMES[i]}": state.m[i] for i in range(self.grid.dim)}
        fields.update({f"u_{AXIS_NAMES[i]}": u[i] for i in range(self.grid.dim)})
        return fields


class EPDiffAdvectiveFormulation(_EPDiffFormulation):
    model = ModelKind.EPDIFF_ADVECTIVE

    def _rhs_2d(self, state: EPDiffState) -> Tendency:
        return epdiff_rhs_advective(state, dealias=self.config.dealias)


class EPDiffCurlFormulation(_EPDiffFormulation):
    model = ModelKind.EPDIFF_CURL

    def _rhs_2d(self, state: EPDiffState) -> Tendency:
        return epdiff_rhs_curl(state, dealias=self.config.dealias)


class FormulationFactory:
    """
    Registry of formulations keyed by model kind

    Lookups accept the ModelKind or its string value.
    """

    _registry: Dict[ModelKind, Type[BaseFormulation]] = {}

    @classmethod
    def register(cls, model: ModelKind, formulation_class: Type[BaseFormulation]):
        cls._registry[model] = formulation_class
        logger.debug(
            "formulation_registered",
            model=model.value,
            formulation=formulation_class.__name__,
        )

    @classmethod
    def get_formulation_class(cls, model: ModelKind | str) -> Type[BaseFormulation]:
        """
        Raises:
            ConfigError: model not registered
        """
        try:
            key = ModelKind(model)
        except ValueError:
            key = None
        formulation_class = cls._registry.get(key) if key is not None else None
        if formulation_class is None:
            logger.warning("formulation_not_found", model=str(model))
            raise ConfigError(
                f"unknown model {model!r}; available: "
                f"{', '.join(m.value for m in cls._registry)}",
                key="model",
            )
        return formulation_class

    @classmethod
    def create(cls, config: RunConfig) -> BaseFormulation:
        return cls.get_formulation_class(config.model)(config)

    @classmethod
    def list_supported_models(cls) -> list[str]:
        return [m.value for m in cls._registry]


FormulationFactory.register(ModelKind.SW_PRIMITIVE, SWPrimitiveFormulation)
FormulationFactory.register(ModelKind.SW_MOMENTUM, SWMomentumFormulation)
FormulationFactory.register(ModelKind.EPDIFF_ADVECTIVE, EPDiffAdvectiveFormulation)
FormulationFactory.register(ModelKind.EPDIFF_CURL, EPDiffCurlFormulation)


def get_formulation(config: RunConfig) -> BaseFormulation:
    """
    Convenience wrapper around FormulationFactory.create

    Example:
        >>> formulation = get_formulation(config)
        >>> state = formulation.initial_state()
    """
    return FormulationFactory.create(config)

