import logging
import sys
from enum import Enum


LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
LOG_FORMAT_DEBUG = "%(levelname)s:%(message)s:%(pathname)s:%(funcName)s:%(lineno)d"


class LogLevels(str, Enum):
    info = "INFO"
    warn = "WARN"
    error = "ERROR"
    debug = "DEBUG"


def configure_logging(log_level: str = LogLevels.info):
    """Route all log records to stderr; stdout is reserved for reports."""
    log_level = str(getattr(log_level, "value", log_level)).upper()
    log_levels = [level.value for level in LogLevels]

    if log_level not in log_levels:
        logging.basicConfig(level=LogLevels.error.value, stream=sys.stderr, format=LOG_FORMAT, force=True)
        logging.error(f"Unknown log level '{log_level}', falling back to ERROR")
        return

    if log_level == LogLevels.warn.value:
        log_level = "WARNING"

    if log_level == LogLevels.debug.value:
        logging.basicConfig(level=log_level, stream=sys.stderr, format=LOG_FORMAT_DEBUG, force=True)
        return

    logging.basicConfig(level=log_level, stream=sys.stderr, format=LOG_FORMAT, force=True)
