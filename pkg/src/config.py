"""Central configuration loaded from config/defaults.yaml via pydantic-settings."""

from pathlib import Path
import logging

from pydantic import Field, field_validator
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
    YamlConfigSettingsSource,
)


# Resolve project root (parent of src/)
PROJECT_ROOT = Path(__file__).resolve().parent.parent


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        yaml_file=PROJECT_ROOT / "config" / "defaults.yaml",
        yaml_file_encoding="utf-8",
        validate_default=True,
    )

    # Input validation
    reciprocity_tol: float = Field(default=1e-6, gt=0)
    consistency_tol: float = Field(default=1e-9, gt=0)

    # Tropical algebra
    star_tol: float = Field(default=1e-9, ge=0)
    selection_tol: float = Field(default=1e-9, ge=0)
    normalization_tol: float = Field(default=1e-9, ge=0)

    # Principal eigenvector (power iteration)
    eigen_tol: float = Field(default=1e-12, gt=0)
    eigen_max_iter: int = Field(default=10_000, ge=1)

    # Reporting
    tie_tol: float = Field(default=1e-9, ge=0)
    precision: int = Field(default=4, ge=0, le=12)

    # Per-criterion thread pool; 1 runs sequentially
    workers: int = Field(default=1, ge=1, le=64)

    # Paths (resolved to absolute via validator)
    templates_dir: Path = Path("templates")
    problems_dir: Path = Path("problems")

    # Logging
    log_level: str = "WARNING"

    @field_validator("templates_dir", "problems_dir", mode="before")
    @classmethod
    def resolve_path(cls, v: str | Path) -> Path:
        """Resolve relative paths against project root."""
        path = Path(v)
        if not path.is_absolute():
            path = PROJECT_ROOT / path
        return path

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        # The command line promises no environment variables: YAML file only.
        return init_settings, YamlConfigSettingsSource(settings_cls)


# Module-level singleton
settings = Settings()


def setup_logging(level: str | None = None) -> None:
    """Configure root logging on stderr; stdout is reserved for reports."""
    name = (level or settings.log_level).upper()
    logging.basicConfig(
        level=getattr(logging, name, logging.WARNING),
        format="%(asctime)s [%(name)s] %(levelname)s: %(message)s",
        force=True,
    )
