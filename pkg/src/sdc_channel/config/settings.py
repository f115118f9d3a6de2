"""Process settings for SDC-Channel.

Settings here never influence simulation results; everything that does lives
in the scenario document.
"""

from functools import lru_cache

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class OutputSettings(BaseSettings):
    """Where and how results are written."""

    SDC_OUTPUT_DIR: str = Field(default="out", description="Default output directory")
    SDC_MAX_WORKERS: int = Field(default=4, ge=1, description="Threads for per-link simulation")


class LoggingSettings(BaseSettings):
    """Logging configuration."""

    LOG_LEVEL: str = Field(default="INFO", description="Root log level")
    LOG_JSON: bool = Field(default=False, description="Emit JSON lines instead of console output")


class Settings(BaseSettings):
    """Combined process settings."""

    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")

    SDC_OUTPUT_DIR: str = "out"
    SDC_MAX_WORKERS: int = 4
    LOG_LEVEL: str = "INFO"
    LOG_JSON: bool = False

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate that LOG_LEVEL names a stdlib logging level."""
        level = v.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"LOG_LEVEL must be a logging level name, got {v!r}")
        return level

    @field_validator("SDC_MAX_WORKERS")
    @classmethod
    def validate_workers(cls, v: int) -> int:
        """Validate that at least one worker is configured."""
        if v < 1:
            raise ValueError("SDC_MAX_WORKERS must be >= 1")
        return v

    @property
    def output(self) -> OutputSettings:
        """Get output settings."""
        return OutputSettings(
            SDC_OUTPUT_DIR=self.SDC_OUTPUT_DIR,
            SDC_MAX_WORKERS=self.SDC_MAX_WORKERS,
        )

    @property
    def logging(self) -> LoggingSettings:
        """Get logging settings."""
        return LoggingSettings(LOG_LEVEL=self.LOG_LEVEL, LOG_JSON=self.LOG_JSON)


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
