"""Runtime configuration read from the environment."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import SchemaError

DEFAULT_SEED = 20240229
DEFAULT_MAX_COLOR = 2


def _env_int(name: str, default: int) -> int:
    val = os.environ.get(name)
    if val is None:
        return default
    try:
        return int(val)
    except ValueError as e:
        raise SchemaError(name, "must be an integer") from e


def _env_float(name: str, default: float) -> float:
    val = os.environ.get(name)
    if val is None:
        return default
    try:
        return float(val)
    except ValueError as e:
        raise SchemaError(name, "must be a number") from e


@dataclass(frozen=True)
class SkeinlabConfig:
    seed: int = DEFAULT_SEED
    max_color: int = DEFAULT_MAX_COLOR
    eval_tolerance: float = 1e-12
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "SkeinlabConfig":
        max_color = _env_int("SKEINLAB_MAX_COLOR", DEFAULT_MAX_COLOR)
        if max_color < 0:
            raise SchemaError("SKEINLAB_MAX_COLOR", "must be non-negative")
        return cls(
            seed=_env_int("SKEINLAB_SEED", DEFAULT_SEED),
            max_color=max_color,
            eval_tolerance=_env_float("SKEINLAB_EVAL_TOLERANCE", 1e-12),
            log_level=os.environ.get("SKEINLAB_LOG_LEVEL", "WARNING"),
        )


@dataclass(frozen=True)
class ApiSettings:
    """Request limits for the HTTP service; larger requests get a 400."""

    max_color: int = 2
    max_strands: int = 6
    log_level: str = "WARNING"

    @staticmethod
    def from_env() -> "ApiSettings":
        return ApiSettings(
            max_color=_env_int("SKEINLAB_API_MAX_COLOR", 2),
            max_strands=_env_int("SKEINLAB_API_MAX_STRANDS", 6),
            log_level=os.environ.get("SKEINLAB_LOG_LEVEL", "WARNING"),
        )
