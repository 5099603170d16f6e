"""
EPDiff-SW - Pydantic Schemas
Validated parameter sets, run configuration and report records
"""

import warnings
from enum import Enum
from typing import Optional

import structlog
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationInfo,
    computed_field,
    field_validator,
    model_validator,
)

from epdiffsw.core.exceptions import AlphaRangeWarning

logger = structlog.get_logger()

# Relative slack when checking that t_end is a whole number of steps
STEP_COUNT_TOLERANCE = 1e-9


# ============================================================================
# Operator Schemas
# ============================================================================


class OperatorParams(BaseModel):
    """Parameters of the Yukawa operator (1 - alpha^2 Laplacian)^nu"""

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(..., gt=0, allow_inf_nan=False)
    nu: float = Field(..., gt=0, allow_inf_nan=False)
    dim: int = Field(..., ge=1, le=2)

    @model_validator(mode="after")
    def warn_large_alpha(self) -> "OperatorParams":
        if self.alpha**2 > 1:
            logger.warning("yukawa_alpha_outside_range", alpha=self.alpha)
            warnings.warn(
                f"alpha^2 = {self.alpha**2:.4g} > 1 is outside the usual modelling range",
                AlphaRangeWarning,
                stacklevel=2,
            )
        return self


class GreenParams(BaseModel):
    """Yukawa parameters plus the derived Bessel order nu - n/2"""

    model_config = ConfigDict(frozen=True)

    op: OperatorParams

    @computed_field  # type: ignore[prop-decorator]
    @property
    def order(self) -> float:
        return self.op.nu - self.op.dim / 2


# ============================================================================
# Run Configuration Schemas
# ============================================================================


class ModelKind(str, Enum):
    """Evolution equations a run can integrate"""

    SW_PRIMITIVE = "sw_primitive"
    SW_MOMENTUM = "sw_momentum"
    EPDIFF_ADVECTIVE = "epdiff_advective"
    EPDIFF_CURL = "epdiff_curl"

    @property
    def is_shallow_water(self) -> bool:
        return self in (ModelKind.SW_PRIMITIVE, ModelKind.SW_MOMENTUM)


class InitialCondition(str, Enum):
    """Initial-condition families"""

    PEAKON = "peakon"
    GAUSSIAN = "gaussian"
    RANDOM_SMOOTH = "random_smooth"


class RunConfig(BaseModel):
    """Complete, validated description of one simulation run"""

    model_config = ConfigDict(frozen=True, extra="forbid", use_enum_values=False)

    model: ModelKind
    dim: int = Field(..., ge=1, le=2)
    nx: int = Field(..., ge=4)
    ny: Optional[int] = Field(None, ge=4)
    lx: float = Field(..., gt=0, allow_inf_nan=False)
    ly: Optional[float] = Field(None, gt=0, allow_inf_nan=False)
    alpha: Optional[float] = Field(None, gt=0, allow_inf_nan=False)
    nu: Optional[float] = Field(None, gt=0, allow_inf_nan=False)
    g: float = Field(9.81, ge=0, allow_inf_nan=False)
    depth: float = Field(1.0, gt=0, allow_inf_nan=False)
    t_end: float = Field(..., ge=0, allow_inf_nan=False)
    dt: float = Field(..., gt=0, allow_inf_nan=False)
    output_every: int = Field(1, ge=1)
    ic: InitialCondition
    ic_amplitude: float = Field(0.1, allow_inf_nan=False)
    ic_width: float = Field(1.0, gt=0, allow_inf_nan=False)
    ic_center_x: Optional[float] = Field(None, allow_inf_nan=False)
    ic_center_y: Optional[float] = Field(None, allow_inf_nan=False)
    seed: int = 0
    dealias: bool = True
    output_dir: str = "output"

    @field_validator("dt")
    @classmethod
    def check_steps_reach_t_end(cls, v: float, info: ValidationInfo) -> float:
        t_end = info.data.get("t_end")
        if t_end is None:
            return v
        steps = t_end / v
        if abs(steps - round(steps)) > STEP_COUNT_TOLERANCE * max(1.0, steps):
            raise ValueError(f"t_end={t_end} is not a whole number of steps of dt={v}")
        return v

    @model_validator(mode="after")
    def check_consistency(self) -> "RunConfig":
        if self.nx % 2:
            raise ValueError("nx must be even")
        if self.dim == 2:
            if self.ny is None or self.ly is None:
                raise ValueError("2-D runs require ny and ly")
            if self.ny % 2:
                raise ValueError("ny must be even")
        if not self.model.is_shallow_water and (self.alpha is None or self.nu is None):
            raise ValueError(f"model {self.model.value} requires alpha and nu")
        if self.ic == InitialCondition.PEAKON:
            if self.model.is_shallow_water:
                raise ValueError("peakon initial condition applies to EPDiff models only")
            if self.dim != 1:
                raise ValueError("peakon initial condition is 1-D only")
        return self

    @property
    def sizes(self) -> tuple[int, ...]:
        return (self.nx,) if self.dim == 1 else (self.nx, self.ny)  # type: ignore[return-value]

    @property
    def lengths(self) -> tuple[float, ...]:
        return (self.lx,) if self.dim == 1 else (self.lx, self.ly)  # type: ignore[return-value]

    @property
    def center(self) -> tuple[float, ...]:
        cx = self.lx / 2 if self.ic_center_x is None else self.ic_center_x
        if self.dim == 1:
            return (cx,)
        cy = self.ly / 2 if self.ic_center_y is None else self.ic_center_y  # type: ignore[operator]
        return (cx, cy)

    @property
    def num_steps(self) -> int:
        return round(self.t_end / self.dt)

    def operator_params(self) -> Optional[OperatorParams]:
        if self.alpha is None or self.nu is None:
            return None
        return OperatorParams(alpha=self.alpha, nu=self.nu, dim=self.dim)


# ============================================================================
# Report Schemas
# ============================================================================


class DiagnosticsRecord(BaseModel):
    """Conserved functionals and norms at one output step"""

    step: int
    t: float
    hamiltonian: float
    mass: Optional[float] = None
    momentum_x: float
    momentum_y: Optional[float] = None
    max_speed: float
    l2_m: float


class ValidationReport(BaseModel):
    """Comparison of the closed-form Green's function with the spectral kernel"""

    dim: int
    alpha: float
    nu: float
    order: float
    constant_ratio: float
    max_shape_error: float
    fit_r_min: float
    fit_r_max: float
    fit_points: int


class VerificationCheck(BaseModel):
    """One pass/fail line of a verification suite"""

    suite: str
    name: str
    measured: float
    tolerance: float
    passed: bool
    note: str = ""


__all__ = [
    "OperatorParams",
    "GreenParams",
    "ModelKind",
    "InitialCondition",
    "RunConfig",
    "DiagnosticsRecord",
    "ValidationReport",
    "VerificationCheck",
]
