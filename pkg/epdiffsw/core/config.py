"""
EPDiff-SW - Core Configuration
Centralizes process-level settings with Pydantic validation
"""

from typing import Optional
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process settings read from the environment (and an optional .env file)"""

    model_config = SettingsConfigDict(
        env_file=".env", case_sensitive=True, extra="ignore"
    )

    # Application
    PROJECT_NAME: str = "EPDiff-SW"
    VERSION: str = "1.0.0"

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "console"

    # Output
    EPDIFF_OUTPUT_DIR: Optional[str] = None
    SNAPSHOT_FLOAT_FORMAT: str = "%.17g"

    # Numerics
    SURFACE_FLOOR: float = Field(1e-8, gt=0)
    GREENS_IMAGE_TOLERANCE: float = Field(1e-8, gt=0, lt=1)

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def normalize_log_level(cls, v):
        if isinstance(v, str):
            return v.upper()
        return v

    @field_validator("LOG_FORMAT")
    @classmethod
    def check_log_format(cls, v: str) -> str:
        if v not in ("console", "json"):
            raise ValueError("LOG_FORMAT must be 'console' or 'json'")
        return v

    @property
    def output_dir_override(self) -> Optional[str]:
        return self.EPDIFF_OUTPUT_DIR or None


def get_settings() -> Settings:
    """Re-read the environment; used where overrides must apply at call time"""
    return Settings()


# Global settings instance
settings = Settings()
