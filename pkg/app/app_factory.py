"""
Application Factory for the forcing workbench

This module contains the factory function for creating a configured
Workbench. It handles configuration, logging setup and the poset registry.
"""

import logging
import os

logger = logging.getLogger(__name__)


class Workbench:
    """
    A configured workbench.

    Attributes:
        config (dict): Effective configuration values
        config_name (str): Name of the configuration class that was applied
        posets (dict): Registry of poset kinds to poset implementations
    """

    def __init__(self, config_name, config, posets):
        self.config_name = config_name
        self.config = config
        self.posets = posets
        self.logger = logging.getLogger("app")

    def poset(self, kind):
        """Look up the poset implementation for a kind."""
        from app.models.status import PosetKind

        return self.posets[PosetKind(kind)]

    def __repr__(self):
        return f"<Workbench {self.config_name} posets={len(self.posets)}>"


def create_app(config_name=None, test_config=None):
    """
    Create and configure the workbench.

    Args:
        config_name (str, optional): The configuration to use (development,
            testing, production). Defaults to None, which uses the environment.
        test_config (dict, optional): Values overriding the selected
            configuration class.

    Returns:
        Workbench: The configured workbench.
    """
    if config_name is None:
        config_name = os.environ.get("WORKBENCH_ENV", "development")

    config = configure_app(config_name)
    if test_config:
        config.update(test_config)

    from app.utils.logging_setup import configure_logging

    configure_logging(config)

    workbench = Workbench(config_name, config, initialize_services(config))
    logger.info(f"Created workbench with config: {config_name}")
    return workbench


def configure_app(config_name):
    """
    Collect the UPPER_CASE attributes of the selected configuration class.

    Args:
        config_name (str): The configuration to use.

    Returns:
        dict: Configuration values.
    """
    from app.config import config as config_classes
    from app.utils.errors import ConfigError

    if config_name not in config_classes:
        raise ConfigError(
            f"Unknown configuration '{config_name}'. Valid configurations: {sorted(config_classes)}"
        )

    config_class = config_classes[config_name]
    return {key: getattr(config_class, key) for key in dir(config_class) if key.isupper()}


def initialize_services(config):
    """
    Build the poset registry, applying configuration to the shared oracles.

    Args:
        config (dict): Configuration values.

    Returns:
        dict: Poset registry keyed by PosetKind.
    """
    from app.services import poset_core

    poset_core.configure(
        enumeration_cap=config.get("ENUMERATION_CAP"),
        compatibility_slack=config.get("COMPATIBILITY_SLACK"),
    )
    return poset_core.registry()
