"""
Run configuration shared by every CLI command.

Values are layered: defaults, then an optional YAML file, then
PIGRAPH_* environment variables, then explicit command-line flags.
"""

import logging
import os
from enum import Enum
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field, model_validator

from pigraph.analysis.lts import DEFAULT_MAX_STATES
from pigraph.model.clocks import ClockModel
from pigraph.semantics.gc import GcMode
from pigraph.utils import load_yaml

log = logging.getLogger(__name__)

ENV_VARS = {
    "max_states": "PIGRAPH_MAX_STATES",
    "clock_model": "PIGRAPH_CLOCK",
    "gc_mode": "PIGRAPH_GC",
}


class ExportFormat(str, Enum):
    DOT = "dot"
    JSON = "json"


class RunConfig(BaseModel):
    clock_model: ClockModel = Field(default=ClockModel.CAUSAL, description="Fresh name generator")
    gc_mode: GcMode = Field(default=GcMode.STEP, description="When unused names are collected")
    max_states: int = Field(default=DEFAULT_MAX_STATES, ge=1, description="Exploration guard")
    steps: int = Field(default=10, ge=0, description="Observable transitions printed by trace")
    seed: int = Field(default=0, ge=0, description="Seed for trace choices")
    format: ExportFormat = Field(default=ExportFormat.DOT, description="LTS export format")
    output: Optional[str] = Field(default=None, description="Export path, stdout when absent")
    workers: int = Field(default=1, ge=1, description="Threads expanding each BFS level")
    verify: bool = Field(default=False, description="Check invariants on every explored state")

    @model_validator(mode="after")
    def _logical_without_gc(self) -> "RunConfig":
        if self.clock_model == ClockModel.LOGICAL and self.gc_mode != GcMode.OFF:
            log.debug("logical clock selected, forcing gc off")
            self.gc_mode = GcMode.OFF
        return self

    @staticmethod
    def env_values() -> Dict[str, Any]:
        values = {}
        for field_name, var in ENV_VARS.items():
            raw = os.getenv(var)
            if raw:
                values[field_name] = raw
        return values

    @classmethod
    def from_env(cls) -> "RunConfig":
        return cls(**cls.env_values())

    @staticmethod
    def file_values(path: str) -> Dict[str, Any]:
        data = load_yaml(path)
        if not isinstance(data, dict):
            raise ValueError(f"config file {path} is missing or not a mapping")
        return data

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        return cls(**cls.file_values(path))

    @classmethod
    def load(cls, path: Optional[str] = None, **overrides: Any) -> "RunConfig":
        """Merge all layers; overrides that are None are treated as absent."""
        values: Dict[str, Any] = {}
        if path:
            values.update(cls.file_values(path))
        values.update(cls.env_values())
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
