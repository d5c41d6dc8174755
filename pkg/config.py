"""
Runtime settings for dtcheck.

Every value can be overridden through the environment; command-line flags win over both.
"""

import logging
import os
from typing import Sequence

logger = logging.getLogger(__name__)


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    # accept 1e8 style caps
    return int(float(raw))


def _env_bool(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw is None:
        return default
    return raw.strip().lower() in ("1", "true", "yes", "on")


def _env_choice(name: str, default: str, choices: Sequence[str]) -> str:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    value = raw.strip().lower()
    if value not in choices:
        logger.warning(f"⚠️ Ignoring {name}={raw!r}; expected one of {', '.join(choices)}. Using {default}")
        return default
    return value


# Oracle
ORACLE_CAP = _env_int("DT_ORACLE_CAP", 10**8)
ORACLE_CHUNK = _env_int("DT_ORACLE_CHUNK", 2**18)
SLICES_PER_JOB = _env_int("DT_SLICES_PER_JOB", 4)
MEMORY_FRACTION = float(os.getenv("DT_MEMORY_FRACTION", "0.25"))

# Series
DEFAULT_TRUNCATION = _env_int("DT_DEFAULT_TRUNCATION", 4)
LAMBDA_CONVENTIONS = ("half_lefschetz", "negative_half_lefschetz")
LAMBDA_CONVENTION = _env_choice("DT_LAMBDA_CONVENTION", "half_lefschetz", LAMBDA_CONVENTIONS)

# Tests
TEST_SEED = _env_int("DT_TEST_SEED", 20240917)

# Logging
LOG_LEVEL = getattr(logging, os.getenv("DT_LOG_LEVEL", "INFO").upper(), logging.INFO)
ENABLE_FILE_LOGGING = _env_bool("DT_ENABLE_FILE_LOGGING", False)
ENABLE_CONSOLE_LOGGING = True
DETAILED_FILE_LOGS = True
LOGS_DIR = os.getenv("DT_LOGS_DIR", "logs")
LOG_FILE = "dtcheck.log"
MAX_LOG_SIZE = 5 * 1024 * 1024
LOG_BACKUP_COUNT = 3

# Resource monitoring
ENABLE_PERFORMANCE_MONITORING = _env_bool("DT_ENABLE_PERFORMANCE_MONITORING", True)
