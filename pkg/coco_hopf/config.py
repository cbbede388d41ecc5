"""Runtime settings read from a .env file and COCO_HOPF_* environment variables."""

import os
from pathlib import Path
from typing import Optional, Union

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

ENV_PREFIX = "COCO_HOPF_"


class Settings(BaseModel):
    max_group_order: int = Field(default=16, ge=1)
    max_permutation_order: int = Field(default=120, ge=1)
    normalized_bar: bool = True
    free_word_length: int = Field(default=3, ge=0)
    json_indent: int = Field(default=2, ge=0)
    log_level: str = "WARNING"
    random_seed: int = 20240101
    default_field: str = "Q"
    workspace_dir: str = "workspaces"

    @field_validator("log_level")
    @classmethod
    def _upper_level(cls, value: str) -> str:
        return value.upper()


def load_settings(env_file: Optional[Union[str, Path]] = None, **overrides) -> Settings:
    """Settings from ``env_file`` (default: .env in the working directory),
    the environment, then keyword overrides that are not None."""
    load_dotenv(env_file, override=False)
    values = {}
    for name in Settings.model_fields:
        raw = os.getenv(f"{ENV_PREFIX}{name.upper()}")
        if raw is not None:
            values[name] = raw
    values.update({k: v for k, v in overrides.items() if v is not None})
    return Settings.model_validate(values)
