"""
Logging configuration for the workbench.
"""

import logging
import os
from logging.handlers import RotatingFileHandler


def configure_logging(config):
    """
    Configure logging for the workbench.

    Args:
        config (dict): Configuration mapping with LOG_LEVEL, LOG_FORMAT,
            LOG_TO_FILE and LOG_FILE keys.
    """
    level = config.get("LOG_LEVEL", "INFO")
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.INFO)

    log_format = config.get("LOG_FORMAT", "%(asctime)s - %(name)s - %(levelname)s - %(message)s")
    logging.basicConfig(level=level, format=log_format)
    logging.getLogger("app").setLevel(level)

    if config.get("LOG_TO_FILE"):
        log_file = config.get("LOG_FILE", "logs/workbench.log")
        log_dir = os.path.dirname(log_file)
        if log_dir and not os.path.exists(log_dir):
            os.makedirs(log_dir, exist_ok=True, mode=0o750)

        root = logging.getLogger()
        if not any(
            isinstance(h, RotatingFileHandler) and h.baseFilename == os.path.abspath(log_file)
            for h in root.handlers
        ):
            file_handler = RotatingFileHandler(
                log_file,
                maxBytes=10_000_000,  # 10MB max file size
                backupCount=5,
            )
            file_handler.setLevel(level)
            file_handler.setFormatter(logging.Formatter(log_format))
            root.addHandler(file_handler)
