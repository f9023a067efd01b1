import os
from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    threads: int = 0
    "Worker cap for grid evaluation; 0 uses every available core."

    seed: int = 42
    tau_max: float = 35.0

    quad_relative_tolerance: float = 1e-10
    quad_absolute_tolerance: float = 1e-14
    quad_max_subdivisions: int = 10_000

    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"

    model_config: SettingsConfigDict = {
        "env_prefix": "dephaseprobe_",
    }

    @property
    def max_workers(self) -> int:
        if self.threads > 0:
            return self.threads

        return os.cpu_count() or 1
