"""Configuration management for bootstrap-percolation-workbench."""

import json
import logging
import logging.handlers
import sys
from pathlib import Path
from typing import Any

import colorlog
import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator

from .exceptions import ConfigurationError
from .numerics.constants import Constants

logger = logging.getLogger(__name__)


class MonteCarloConfig(BaseModel):
    """Sampling configuration."""

    seed: int = Field(0, ge=0, description="Master seed for all trial substreams")
    trials: int = Field(1000, ge=1, description="Trials per estimate")
    workers: int = Field(1, ge=1, description="Worker processes for trial batches")
    max_attempts: int = Field(
        100000, ge=1, description="Draw budget for rejection sampling of filled droplets"
    )
    pc_tolerance: float = Field(0.005, gt=0.0, description="Bracket width ending bisection")


class OutputConfig(BaseModel):
    """Result output configuration."""

    path: str | None = Field(None, description="Output file (stdout when unset)")
    format: str = Field("csv", description="Output format: csv, json")
    record_timings: bool = Field(
        False, description="Fill the runtime_ms column (breaks byte-identical re-runs)"
    )

    @field_validator("format")
    @classmethod
    def validate_format(cls, v: str) -> str:
        allowed = ["csv", "json"]
        if v.lower() not in allowed:
            raise ValueError(f"Format must be one of {allowed}")
        return v.lower()


class LogFileConfig(BaseModel):
    """Log file configuration."""

    enabled: bool = Field(False, description="Enable file logging")
    path: str = Field("logs/bperc.log", description="Log file path")
    max_size_mb: int = Field(10, description="Max log file size in MB")
    backup_count: int = Field(3, description="Number of backup files to keep")


class LogConsoleConfig(BaseModel):
    """Console logging configuration."""

    enabled: bool = Field(True, description="Enable console logging on stderr")
    colorize: bool = Field(True, description="Colorize console output")


class LoggingConfig(BaseModel):
    """Logging configuration."""

    level: str = Field("WARNING", description="Logging level")
    format: str = Field(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        description="Log format string",
    )
    # Pydantic V2 mypy limitation with class constructors in default_factory
    file: LogFileConfig = Field(default_factory=LogFileConfig)  # type: ignore[arg-type]
    console: LogConsoleConfig = Field(default_factory=LogConsoleConfig)  # type: ignore[arg-type]

    @field_validator("level")
    @classmethod
    def validate_level(cls, v: str) -> str:
        allowed = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in allowed:
            raise ValueError(f"Level must be one of {allowed}")
        return v.upper()


class RunConfig(BaseModel):
    """Everything a run depends on; a run is reproducible from this alone."""

    # Pydantic V2 mypy limitation with class constructors in default_factory
    constants: Constants = Field(default_factory=Constants)  # type: ignore[arg-type]
    montecarlo: MonteCarloConfig = Field(default_factory=MonteCarloConfig)  # type: ignore[arg-type]
    output: OutputConfig = Field(default_factory=OutputConfig)  # type: ignore[arg-type]
    logging: LoggingConfig = Field(default_factory=LoggingConfig)  # type: ignore[arg-type]

    @classmethod
    def load_from_file(cls, config_path: str) -> "RunConfig":
        """Load configuration from YAML file.

        Args:
            config_path: Path to configuration file

        Returns:
            RunConfig instance

        Raises:
            ConfigurationError: If the file exists but cannot be parsed or validated
        """
        config_path_obj = Path(config_path)

        if not config_path_obj.exists():
            logger.warning(f"Config file not found at {config_path_obj}, using defaults")
            return cls()

        try:
            with open(config_path_obj) as f:
                data = yaml.safe_load(f) or {}
            config = cls(**data)
        except (yaml.YAMLError, ValidationError, TypeError) as e:
            raise ConfigurationError(f"Invalid config file {config_path_obj}: {e}") from e

        logger.info(f"Loaded configuration from {config_path_obj}")
        return config

    def save_to_file(self, config_path: str) -> None:
        """Save configuration to YAML file.

        Args:
            config_path: Path to save configuration
        """
        config_path_obj = Path(config_path)
        config_path_obj.parent.mkdir(parents=True, exist_ok=True)

        try:
            with open(config_path_obj, "w") as f:
                yaml.dump(self.model_dump(), f, default_flow_style=False, sort_keys=False)

            logger.info(f"Saved configuration to {config_path_obj}")

        except Exception as e:
            logger.error(f"Failed to save config to {config_path_obj}: {e}")
            raise

    def provenance(self) -> str:
        """Canonical JSON of the settings that determine results.

        Logging settings are left out; they never change what is computed.
        """
        payload = self.model_dump(mode="json", exclude={"logging"})
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def load_mapping(path: str, what: str = "Parameters") -> dict[str, Any]:
    """Read a YAML or JSON file holding a single mapping.

    Raises:
        ConfigurationError: If the file is missing, unreadable or not a mapping
    """
    path_obj = Path(path)
    if not path_obj.exists():
        raise ConfigurationError(f"{what} file not found: {path_obj}")
    try:
        with open(path_obj) as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Invalid {what.lower()} file {path_obj}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigurationError(f"{what} file {path_obj} must hold a mapping")
    return data


def load_constants(path: str, base: Constants | None = None) -> Constants:
    """Read constants from a YAML or JSON file, overriding ``base``.

    Raises:
        ConfigurationError: If the file is missing, unreadable or invalid
    """
    data = load_mapping(path, "Constants")
    path_obj = Path(path)
    try:
        merged = (base or Constants()).model_dump() | data
        constants = Constants(**merged)
    except (ValidationError, TypeError) as e:
        raise ConfigurationError(f"Invalid constants file {path_obj}: {e}") from e

    constants.ordering_violations()
    logger.info(f"Loaded constants from {path_obj}")
    return constants


LOG_COLORS = {
    "DEBUG": "cyan",
    "INFO": "green",
    "WARNING": "yellow",
    "ERROR": "red",
    "CRITICAL": "red,bg_white",
}


def setup_logging(config: LoggingConfig) -> None:
    """Install the console and optional rotating-file handlers on the root logger.

    Console output goes to stderr; stdout carries results only.

    Args:
        config: Logging configuration
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(config.level)
    root_logger.handlers.clear()

    plain = logging.Formatter(config.format)

    if config.console.enabled:
        console = logging.StreamHandler(sys.stderr)
        console.setFormatter(
            colorlog.ColoredFormatter("%(log_color)s" + config.format, log_colors=LOG_COLORS)
            if config.console.colorize
            else plain
        )
        root_logger.addHandler(console)

    if config.file.enabled:
        log_path = Path(config.file.path)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        rotating = logging.handlers.RotatingFileHandler(
            log_path,
            maxBytes=config.file.max_size_mb * 1024 * 1024,
            backupCount=config.file.backup_count,
        )
        rotating.setFormatter(plain)
        root_logger.addHandler(rotating)

    logger.debug(f"Logging configured at {config.level}")
