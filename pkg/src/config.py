"""
Configuration module for the Sharp Taylor Enclosures application.

This module provides the settings object shared by the enclosure engine, the
brute-force oracle, the MM optimizer and the CLI, plus the global accessors
that let every module read the same configuration without threading it
through each call.

Main Components:
    - Settings: Pydantic model for environment-based configuration
    - Global functions: For initializing, accessing and resetting configuration state
    - setup_logging: Root logger configuration driven by Settings.log_level
    - setup_cli_logging: Same for the CLI, keeping stderr free for the JSON error line

Usage:
    # Load settings from environment (.env supported)
    settings = Settings()

    # Use the process-wide instance
    n = get_settings().oracle_grid_size

    # Override for a test
    initialize_settings(Settings(oracle_grid_size=2_000))

Environment Variables:
    SHARP_TAYLOR_ORACLE_GRID_SIZE: Grid size for sharp-interval oracles (default: 1000000)
    SHARP_TAYLOR_AUDIT_GRID_SIZE: Grid size for validity audits (default: 100000)
    SHARP_TAYLOR_INFLATION_ULPS: Outward widening used when validity is asserted (default: 4)
    SHARP_TAYLOR_NEAR_X0_TOLERANCE: Relative distance below which the ratio uses the Taylor tail (default: 1e-4)
    SHARP_TAYLOR_TAIL_MAX_TERMS: Maximum number of tail-series terms (default: 30)
    SHARP_TAYLOR_ZERO_DERIVATIVE_TOLERANCE: Threshold for a vanishing derivative (default: 1e-12)
    SHARP_TAYLOR_MAX_ELL: Highest order searched for the first nonvanishing derivative (default: 12)
    SHARP_TAYLOR_EPSILON_LADDER: JSON list of trust-region widths for ratio series
    SHARP_TAYLOR_MM_RADIUS / MM_MAX_ITERS / MM_TOL: MM loop defaults
    SHARP_TAYLOR_ROOT_SCAN_POINTS: Sign-change scan size for numeric extrema (default: 4096)
    SHARP_TAYLOR_ROOT_SCAN_DENSITY: Minimum scan points per unit width on wide regions (default: 256)
    SHARP_TAYLOR_FLOAT_DIGITS: Significant digits in CLI output (default: 17)
    SHARP_TAYLOR_LOG_LEVEL: Logging level name (default: WARNING)
    SHARP_TAYLOR_LOG_FILE: File receiving log records; the CLI discards them when unset
"""

import logging
from typing import List, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


DEFAULT_EPSILON_LADDER = [1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4]


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    # Oracle and audit grids
    oracle_grid_size: int = Field(default=1_000_000, ge=100)
    audit_grid_size: int = Field(default=100_000, ge=100)

    # Floating-point policy
    inflation_ulps: int = Field(default=4, ge=0)
    near_x0_tolerance: float = Field(default=1e-4, gt=0)
    tail_max_terms: int = Field(default=30, ge=1)
    zero_derivative_tolerance: float = Field(default=1e-12, ge=0)
    max_ell: int = Field(default=12, ge=1)

    # Width-ratio experiment
    epsilon_ladder: List[float] = Field(default_factory=lambda: list(DEFAULT_EPSILON_LADDER))

    # MM loop
    mm_radius: float = Field(default=1.0, gt=0)
    mm_max_iters: int = Field(default=50, ge=1)
    mm_tol: float = Field(default=1e-10, gt=0)

    # Numeric extrema scan
    root_scan_points: int = Field(default=4096, ge=16)
    root_scan_density: int = Field(default=256, ge=0)

    # Output
    float_digits: int = Field(default=17, ge=1, le=17)
    log_level: str = "WARNING"
    log_file: Optional[str] = None

    model_config = SettingsConfigDict(
        env_prefix="SHARP_TAYLOR_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )


# Global instances
_settings: Optional[Settings] = None


def initialize_settings(settings: Optional[Settings] = None) -> Settings:
    """
    Initialize the global settings instance.

    Args:
        settings: Optional Settings instance. If not provided, will load from environment.

    Returns:
        Settings: The installed settings object
    """
    global _settings

    if settings is None:
        settings = Settings()

    _settings = settings
    return _settings


def get_settings() -> Settings:
    """
    Get the global settings instance, loading it from the environment on first use.

    Returns:
        Settings: The global settings object
    """
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _log_level(settings: Settings) -> int:
    level = logging.getLevelName(settings.log_level.upper())
    if not isinstance(level, int):
        raise ValueError(
            f"Unsupported log level: '{settings.log_level}'. "
            f"Supported levels: DEBUG, INFO, WARNING, ERROR, CRITICAL"
        )
    return level


def _file_handler(settings: Settings) -> logging.Handler:
    handler = logging.FileHandler(settings.log_file, encoding="utf-8")
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    return handler


def setup_logging(settings: Optional[Settings] = None) -> None:
    """Configure the root logger from Settings.log_level, writing to Settings.log_file or stderr."""
    settings = settings or get_settings()
    level = _log_level(settings)
    if settings.log_file:
        logging.basicConfig(level=level, handlers=[_file_handler(settings)], force=True)
    else:
        logging.basicConfig(level=level, format=LOG_FORMAT, force=True)


def setup_cli_logging(settings: Optional[Settings] = None) -> None:
    """
    Configure logging for the command line.

    stderr carries only the JSON error line, so records go to Settings.log_file
    when it is set and are discarded otherwise.
    """
    settings = settings or get_settings()
    level = _log_level(settings)
    handler = _file_handler(settings) if settings.log_file else logging.NullHandler()
    logging.basicConfig(level=level, handlers=[handler], force=True)


def reset_global_state():
    """
    Reset all global state (useful for testing).

    This clears the cached settings so the next access reloads them.
    """
    global _settings
    _settings = None
