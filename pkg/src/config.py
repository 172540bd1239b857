"""Configuration settings for the moldable task scheduling toolkit."""

from fractions import Fraction

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings."""

    model_config = SettingsConfigDict(env_prefix="MOLDSCHED_", env_file=".env", extra="ignore")

    # Reproducibility
    seed: int = 0

    # Algorithm defaults
    epsilon: str = "1/100"
    x_h_sample_limit: int = 100

    # Oracle limits
    oracle_max_tasks: int = 4
    oracle_max_procs: int = 8

    # Verification
    verify_workers: int = 1

    # Logging
    log_level: str = "WARNING"

    # Server Configuration
    host: str = "0.0.0.0"
    port: int = 8000

    # Paths
    reports_dir: str = "reports"
    templates_dir: str = "templates"

    @property
    def default_epsilon(self) -> Fraction:
        """The configured bisection tolerance as an exact rational."""
        return Fraction(self.epsilon)


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get application settings."""
    return settings
