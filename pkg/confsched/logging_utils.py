"""
Logging utilities for confsched.

Every module logs through a child of the ``confsched`` logger
(``confsched.ingest``, ``confsched.evaluation``, ...). Only that package
logger carries handlers, so importing confsched as a library leaves the
root logger of the host application alone.
"""

import logging
import os
import sys
from logging import Logger
from logging.handlers import RotatingFileHandler
from typing import Dict, Optional

LOG_LEVELS: Dict[str, int] = {
    'DEBUG': logging.DEBUG,
    'INFO': logging.INFO,
    'WARNING': logging.WARNING,
    'ERROR': logging.ERROR,
    'CRITICAL': logging.CRITICAL,
}

LOGGER_NAME = 'confsched'

DEFAULT_MAX_BYTES = 10 * 1024 * 1024  # 10MB
DEFAULT_BACKUP_COUNT = 5

LOG_FORMAT = '[%(asctime)s] [%(levelname)-7s] %(name)s: %(message)s'

_configured = False


def _level(name: str) -> int:
    return LOG_LEVELS.get(name.upper(), logging.INFO)


def setup_logging(log_level: str = 'INFO', log_file: Optional[str] = None,
                  max_bytes: int = DEFAULT_MAX_BYTES,
                  backup_count: int = DEFAULT_BACKUP_COUNT) -> Logger:
    """
    Configure the package logger: stderr console plus an optional rotating file.

    Console output goes to stderr so that tables and parsed titles printed on
    stdout can be piped. Calling this again replaces the previous handlers.

    Args:
        log_level: DEBUG, INFO, WARNING, ERROR or CRITICAL; anything else means INFO
        log_file: Optional path of a rotating log file
        max_bytes: Size at which the log file rotates (default: 10MB)
        backup_count: Rotated files to keep (default: 5)

    Returns:
        Logger: The package logger
    """
    global _configured

    package_logger = logging.getLogger(LOGGER_NAME)
    package_logger.setLevel(_level(log_level))
    package_logger.propagate = False

    for handler in package_logger.handlers[:]:
        package_logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(LOG_FORMAT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    package_logger.addHandler(console_handler)

    if log_file:
        try:
            file_handler = RotatingFileHandler(
                log_file,
                maxBytes=max_bytes,
                backupCount=backup_count,
                encoding='utf-8',
            )
            file_handler.setFormatter(formatter)
            package_logger.addHandler(file_handler)
            package_logger.debug(f"Log file: {log_file} (max size: {max_bytes/1024/1024:.1f}MB, "
                                 f"backups: {backup_count})")
        except OSError as e:
            package_logger.warning(f"⚠️ Failed to set up file logging to {log_file}: {e}")

    _configured = True
    return package_logger


def get_logger(name: Optional[str] = None) -> Logger:
    """
    Get the package logger or one of its children.

    The first call configures logging from LOG_LEVEL, LOG_FILE, LOG_MAX_BYTES
    and LOG_BACKUP_COUNT; the CLI reconfigures it once flags are parsed.

    Args:
        name: Module name such as ``confsched.scoring``; None for the package logger

    Returns:
        Logger: The requested logger
    """
    if not _configured:
        try:
            max_bytes = int(os.getenv('LOG_MAX_BYTES') or DEFAULT_MAX_BYTES)
            backup_count = int(os.getenv('LOG_BACKUP_COUNT') or DEFAULT_BACKUP_COUNT)
        except ValueError:
            max_bytes, backup_count = DEFAULT_MAX_BYTES, DEFAULT_BACKUP_COUNT
        setup_logging(os.getenv('LOG_LEVEL') or 'INFO', (os.getenv('LOG_FILE') or '').strip() or None,
                      max_bytes, backup_count)

    if not name or name == LOGGER_NAME:
        return logging.getLogger(LOGGER_NAME)
    if not name.startswith(LOGGER_NAME + '.'):
        name = f"{LOGGER_NAME}.{name}"
    return logging.getLogger(name)


def change_log_level(level: str) -> bool:
    """
    Change the package log level at runtime.

    Args:
        level: The new log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)

    Returns:
        bool: True if successful, False otherwise
    """
    package_logger = logging.getLogger(LOGGER_NAME)

    if level.upper() not in LOG_LEVELS:
        package_logger.error(f"❌ Invalid log level: {level}")
        return False

    package_logger.setLevel(LOG_LEVELS[level.upper()])
    package_logger.debug(f"Log level changed to: {level.upper()}")
    return True
