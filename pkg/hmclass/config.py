"""Runtime settings."""

import os
from typing import Mapping, Optional

from pydantic import BaseModel, Field, ValidationError

from .errors import ConfigError

MAX_FLATS_ENV = "HMCLASS_MAX_FLATS"


class Settings(BaseModel):
    """Settings shared by the engines and the command line."""

    max_flats: int = Field(100000, ge=1)

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        """
        Build settings from environment variables.

        Args:
            environ: Mapping to read from (defaults to ``os.environ``)

        Returns:
            Settings: Validated settings

        Raises:
            ConfigError: If a variable is set to an invalid value
        """
        env = os.environ if environ is None else environ
        values = {}
        raw = env.get(MAX_FLATS_ENV)
        if raw is not None and raw.strip():
            values["max_flats"] = raw.strip()
        try:
            return cls(**values)
        except ValidationError as e:
            raise ConfigError(
                f"Invalid {MAX_FLATS_ENV}={raw!r}: expected a positive integer"
            ) from e
