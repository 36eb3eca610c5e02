"""
Logging configuration for the toolkit.
"""
import logging
import sys
from pathlib import Path
from logging.handlers import RotatingFileHandler
from .settings import settings


def setup_logging(level: str | None = None):
    """
    Configure logging with a console handler and, optionally, rotating file handlers.

    The console handler writes to stderr so command output on stdout stays
    byte-identical across runs.

    Args:
        level: Overrides settings.LOG_LEVEL when given (CLI --log-level)
    """
    level_name = (level or settings.LOG_LEVEL).upper()

    # Configure root logger
    logger = logging.getLogger()
    logger.setLevel(getattr(logging, level_name, logging.INFO))

    # Remove existing handlers
    logger.handlers.clear()

    # Console handler
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.DEBUG if settings.DEBUG else getattr(logging, level_name, logging.INFO))
    console_format = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    console_handler.setFormatter(console_format)
    logger.addHandler(console_handler)

    if settings.LOG_TO_FILE:
        log_dir = Path(settings.LOG_DIR)
        log_dir.mkdir(parents=True, exist_ok=True)

        # File handler (rotating)
        file_handler = RotatingFileHandler(
            log_dir / "symquandle.log",
            maxBytes=10 * 1024 * 1024,  # 10 MB
            backupCount=5
        )
        file_handler.setLevel(logging.DEBUG)
        file_format = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )
        file_handler.setFormatter(file_format)
        logger.addHandler(file_handler)

        # Error file handler (separate file for errors)
        error_handler = RotatingFileHandler(
            log_dir / "errors.log",
            maxBytes=10 * 1024 * 1024,  # 10 MB
            backupCount=5
        )
        error_handler.setLevel(logging.ERROR)
        error_handler.setFormatter(file_format)
        logger.addHandler(error_handler)

    logger.debug("Logging initialized - Level: %s, Environment: %s", level_name, settings.ENVIRONMENT)

    return logger

