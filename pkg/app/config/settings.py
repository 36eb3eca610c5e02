"""
Centralized configuration management using Pydantic Settings.
All environment variables are validated and accessed through this module.
"""
from functools import lru_cache
from pydantic_settings import BaseSettings
from pydantic import Field


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables."""

    # Application Configuration
    DEBUG: bool = Field(default=False, description="Debug mode")
    LOG_LEVEL: str = Field(default="INFO", description="Logging level")
    ENVIRONMENT: str = Field(default="development", description="Environment: development, ci, production")
    LOG_DIR: str = Field(default="logs", description="Directory for rotating log files")
    LOG_TO_FILE: bool = Field(default=False, description="Also write rotating log files under LOG_DIR")

    # Resource caps
    ELEMENT_CAP: int = Field(
        default=4096,
        description="Maximum |R|^d for materializing a symplectic quandle table"
    )
    SUBQUANDLE_CAP: int = Field(
        default=100_000,
        description="Maximum number of subquandles enumerated before aborting"
    )
    ISOMETRY_SEARCH_CAP: int = Field(
        default=70_000,
        description="Maximum |R|^(d*d) candidate matrices in the brute-force isometry search"
    )
    NAIVE_ORACLE_CAP: int = Field(
        default=1_000_000,
        description="Maximum |T|^g assignments checked by the naive coloring oracle"
    )

    # Conjecture scan bounds
    SCAN_MAX_MODULUS: int = Field(default=9, description="Largest n accepted by the conjecture scan")
    SCAN_MAX_DIM: int = Field(default=2, description="Largest dimension accepted by the conjecture scan")

    # Parallelism
    WORKERS: int = Field(
        default=1,
        ge=1,
        description="Process pool size for coloring enumeration and scans (1 = in-process)"
    )

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = True


@lru_cache()
def get_settings() -> Settings:
    """
    Get cached settings instance.
    Uses lru_cache to ensure settings are loaded once and reused.
    """
    return Settings()


# Global settings instance
settings = get_settings()
