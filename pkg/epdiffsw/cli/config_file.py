"""
EPDiff-SW - Run Configuration Files
Flat key=value text with '#' comments, parsed into a validated RunConfig
"""

from enum import Enum
from typing import Any, Callable, Dict, Optional

import structlog
from pydantic import ValidationError

from epdiffsw.core.exceptions import ConfigError
from epdiffsw.schemas import ModelKind, RunConfig

logger = structlog.get_logger()


def _parse_bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"expected true/false, got {text!r}")


# Key order is also the serialization order.
KEY_PARSERS: Dict[str, Callable[[str], Any]] = {
    "model": str,
    "dim": int,
    "nx": int,
    "ny": int,
    "lx": float,
    "ly": float,
    "alpha": float,
    "nu": float,
    "g": float,
    "depth": float,
    "dt": float,
    "t_end": float,
    "output_every": int,
    "ic": str,
    "ic_amplitude": float,
    "ic_width": float,
    "ic_center_x": float,
    "ic_center_y": float,
    "seed": int,
    "dealias": _parse_bool,
    "output_dir": str,
}

REQUIRED_KEYS = ("model", "dim", "nx", "lx", "dt", "t_end", "ic")
TWO_D_KEYS = ("ny", "ly")
EPDIFF_KEYS = ("alpha", "nu")


def _conditional_keys(values: Dict[str, Any]) -> tuple[str, ...]:
    keys: tuple[str, ...] = ()
    if values.get("dim") == 2:
        keys += TWO_D_KEYS
    try:
        model = ModelKind(values.get("model"))
    except ValueError:
        return keys
    if not model.is_shallow_water:
        keys += EPDIFF_KEYS
    return keys


def parse_config(text: str) -> RunConfig:
    """
    Parse a key=value configuration document

    Args:
        text: File contents

    Returns:
        Validated RunConfig (defaults: g = 9.81, dealias = true, seed = 0)

    Raises:
        ConfigError: unknown, duplicate, missing or unparseable key, or a
            value rejected by RunConfig validation; names key and line
    """
    values: Dict[str, Any] = {}
    lines: Dict[str, int] = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        if "=" not in content:
            raise ConfigError(f"expected key=value, got {content!r}", line=number)
        key, _, value = (part.strip() for part in content.partition("="))
        if key not in KEY_PARSERS:
            raise ConfigError("unknown key", key=key, line=number)
        if key in values:
            raise ConfigError(f"duplicate key (first set on line {lines[key]})", key=key, line=number)
        if not value:
            raise ConfigError("empty value", key=key, line=number)
        try:
            values[key] = KEY_PARSERS[key](value)
        except ValueError:
            raise ConfigError(f"cannot parse value {value!r}", key=key, line=number) from None
        lines[key] = number

    for key in REQUIRED_KEYS + _conditional_keys(values):
        if key not in values:
            raise ConfigError("missing required key", key=key)

    try:
        config = RunConfig(**values)
    except ValidationError as exc:
        error = exc.errors()[0]
        location = error.get("loc") or ()
        bad_key: Optional[str] = str(location[0]) if location else None
        raise ConfigError(
            error.get("msg", "invalid value"),
            key=bad_key,
            line=lines.get(bad_key) if bad_key else None,
        ) from None

    logger.debug("config_parsed", model=config.model.value, dim=config.dim, keys=len(values))
    return config


def _format_value(value: Any) -> str:
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def serialize_config(config: RunConfig) -> str:
    """key=value text that parse_config maps back to an equal RunConfig"""
    lines = ["# epdiffsw run configuration"]
    for key in KEY_PARSERS:
        value = getattr(config, key)
        if value is None:
            continue
        lines.append(f"{key} = {_format_value(value)}")
    return "\n".join(lines) + "\n"


def load_config(path) -> RunConfig:
    """Read and parse a configuration file"""
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config(handle.read())
