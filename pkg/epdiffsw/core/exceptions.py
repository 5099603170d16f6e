"""
EPDiff-SW - Exception Hierarchy
"""

from typing import Optional


class EPDiffSWError(Exception):
    """Base exception for all library errors"""

    pass


class GridError(EPDiffSWError, ValueError):
    """Invalid grid parameters or axis"""

    pass


class DimensionMismatchError(EPDiffSWError, ValueError):
    """Fields, grids or operator parameters disagree on shape or dimension"""

    pass


class SurfaceFloorError(EPDiffSWError, ValueError):
    """Layer depth eta fell to or below the positivity floor"""

    def __init__(self, minimum: float, floor: float):
        self.minimum = minimum
        self.floor = floor
        super().__init__(f"eta minimum {minimum:.6g} is not above floor {floor:.3g}")


class SpecialFunctionDomainError(EPDiffSWError, ValueError):
    """Special-function argument outside the supported envelope"""

    pass


class GridTooSmallError(EPDiffSWError, ValueError):
    """Periodic box too small for the Green's kernel to decay between images"""

    pass


class NonFiniteStateError(EPDiffSWError, ValueError):
    """Time stepping produced NaN or Inf"""

    def __init__(self, step: Optional[int], detail: str = ""):
        self.step = step
        where = f" at step {step}" if step is not None else ""
        message = f"non-finite values produced{where}"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class ConfigError(EPDiffSWError, ValueError):
    """Run configuration could not be parsed or validated"""

    def __init__(self, message: str, key: Optional[str] = None, line: Optional[int] = None):
        self.key = key
        self.line = line
        location = []
        if key is not None:
            location.append(f"key '{key}'")
        if line is not None:
            location.append(f"line {line}")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")


class SnapshotFormatError(EPDiffSWError, ValueError):
    """File is not a well-formed EPDF snapshot"""

    pass


class UnknownSuiteError(EPDiffSWError, ValueError):
    """Requested verification suite does not exist"""

    pass


class AlphaRangeWarning(UserWarning):
    """alpha**2 > 1 is accepted but falls outside the usual modelling range"""

    pass
