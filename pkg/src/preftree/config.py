from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(env_prefix="PREFTREE_", env_file=".env", extra="ignore")

    # Survey scale
    value_min: float = 1.0
    value_max: float = 5.0

    # Discriminant analysis
    ridge_scale: float = 1e-8  # epsilon = ridge_scale * mean diagonal
    target_class: str = "Students"

    # Graph oracle
    brute_force_max_nodes: int = 10

    # Output
    decimals: int = 6  # human-readable precision (report, DOT, stdout)
    log_level: str = "WARNING"

    # HTTP service
    app_name: str = "Preftree"
    debug: bool = False
    host: str = "0.0.0.0"
    port: int = 8000


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


settings = get_settings()
