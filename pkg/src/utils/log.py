"""
Logging setup for the command-line front end
The library only creates module loggers; handlers are installed here
"""

import logging
import sys
from typing import Optional

from src.utils.config import config

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def setup_logging(level: Optional[str] = None) -> logging.Logger:
    """
    Install a single stderr handler on the package logger

    Args:
        level: Level name (defaults to config.LOG_LEVEL)

    Returns:
        The configured package logger
    """
    logger = logging.getLogger("src")
    logger.setLevel((level or config.LOG_LEVEL).upper())

    handlers = [h for h in logger.handlers if getattr(h, "_realignbound", False)]
    if handlers:
        # repeated calls follow a replaced sys.stderr
        handlers[0].setStream(sys.stderr)
    else:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._realignbound = True
        logger.addHandler(handler)

    return logger
