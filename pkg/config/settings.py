"""Engine settings read from SUPERHOMOG_* environment variables"""

import os
from typing import Literal, Mapping, Optional

from pydantic import BaseModel, Field

ENV_PREFIX = "SUPERHOMOG_"


class EngineSettings(BaseModel):
    """Knobs shared by every command"""

    window_margin: int = Field(
        default=2, ge=0, description="Extra exponents kept on each side of the H1 window"
    )
    workers: int = Field(default=1, ge=1, description="Processes used by classify --range")
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(
        default="WARNING", description="Root logging level"
    )
    output_format: Literal["text", "json"] = Field(
        default="text", description="Default output format"
    )


def load_settings(environ: Optional[Mapping[str, str]] = None) -> EngineSettings:
    """Build settings from the environment; raises pydantic.ValidationError"""
    environ = os.environ if environ is None else environ
    values = {}
    for name in EngineSettings.model_fields:
        raw = environ.get(ENV_PREFIX + name.upper())
        if raw is not None and raw != "":
            values[name] = raw.upper() if name == "log_level" else raw
    return EngineSettings(**values)
