"""
Configuration module for the forcing workbench

This module contains configuration classes for different environments.
"""

import os

from dotenv import load_dotenv

load_dotenv()


def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value not in (None, "") else default


class DefaultConfig:
    """Base configuration with sensible defaults for all environments."""

    DEBUG = False
    TESTING = False

    # Enumeration
    ENUMERATION_CAP = _env_int("ENUMERATION_CAP", 1_000_000)
    COMPATIBILITY_SLACK = _env_int("COMPATIBILITY_SLACK", 2)

    # Randomized sweeps and simulation
    RANDOM_SAMPLES = _env_int("RANDOM_SAMPLES", 10_000)
    RANDOM_SEED = _env_int("RANDOM_SEED", 0)
    SIM_STEPS = _env_int("SIM_STEPS", 50)
    SIM_SEEDS = _env_int("SIM_SEEDS", 100)

    # Logging
    LOG_LEVEL = os.environ.get("LOG_LEVEL", "INFO")
    LOG_TO_FILE = os.environ.get("LOG_TO_FILE", "false").lower() == "true"
    LOG_FILE = os.environ.get("LOG_FILE", "logs/workbench.log")
    LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class DevelopmentConfig(DefaultConfig):
    """Development configuration."""

    DEBUG = True
    LOG_LEVEL = os.environ.get("LOG_LEVEL", "DEBUG")


class TestingConfig(DefaultConfig):
    """Testing configuration."""

    TESTING = True
    DEBUG = True
    LOG_TO_FILE = False

    # Smaller randomized sweeps keep the unit suite fast
    RANDOM_SAMPLES = 500
    SIM_SEEDS = 20


class ProductionConfig(DefaultConfig):
    """Configuration for long verification runs."""

    LOG_TO_FILE = os.environ.get("LOG_TO_FILE", "true").lower() == "true"


config = {
    "development": DevelopmentConfig,
    "testing": TestingConfig,
    "production": ProductionConfig,
    "default": DevelopmentConfig,
}
