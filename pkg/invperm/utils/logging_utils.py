import os
import sys
import logging

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

DEBUG_MODE = os.getenv("DEBUG_MODE", "false").lower() in ("true", "yes", "1")  # Enable extra debug logging
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

logger = logging.getLogger("invperm")


def configure_logging(level: str = "INFO") -> None:
    """Configure root logging for the CLI. Reports go to stdout, logs to stderr."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format=LOG_FORMAT,
        stream=sys.stderr,
    )


def debug_log(message: str, log: logging.Logger = logger) -> None:
    """Helper function for debug logging"""
    if DEBUG_MODE:
        log.info(f"DEBUG: {message}")
    else:
        log.debug(message)
