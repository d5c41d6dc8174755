# logging_utils.py
"""
Logging for dtcheck runs.

Diagnostics go to standard error so that reports on standard output stay machine readable.
A rotating file receives DEBUG records when file logging is enabled in config or a path is
given on the command line.
"""

import logging
import os
import platform
import sys
from logging.handlers import RotatingFileHandler
from typing import Dict, List, Optional

CONSOLE_FORMAT = '%(levelname)s - %(message)s'
FILE_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s'

# Libraries that are chatty at DEBUG
QUIET_LOGGERS = ('sympy', 'numpy', 'asyncio', 'concurrent.futures')


class LoggingConfig:
    """Settings resolved from the config module plus command-line overrides"""

    def __init__(self, config_module=None, level: Optional[int] = None, log_file: Optional[str] = None):
        self.config = config_module
        self.level = level if level is not None else self._get_config_value('LOG_LEVEL', logging.INFO)
        self.console = self._get_config_value('ENABLE_CONSOLE_LOGGING', True)
        self.file_level = logging.DEBUG if self._get_config_value('DETAILED_FILE_LOGS', True) else self.level
        self.max_bytes = self._get_config_value('MAX_LOG_SIZE', 5 * 1024 * 1024)
        self.backups = self._get_config_value('LOG_BACKUP_COUNT', 3)

        if log_file:
            self.file_path: Optional[str] = log_file
        elif self._get_config_value('ENABLE_FILE_LOGGING', False):
            self.file_path = os.path.join(
                self._get_config_value('LOGS_DIR', 'logs'),
                self._get_config_value('LOG_FILE', 'dtcheck.log'),
            )
        else:
            self.file_path = None

    def _get_config_value(self, key: str, default):
        return getattr(self.config, key, default) if self.config is not None else default


class EnhancedLogger:
    """Installs the dtcheck handlers on the root logger and removes them again"""

    def __init__(self, config_module=None, level: Optional[int] = None, log_file: Optional[str] = None):
        self.settings = LoggingConfig(config_module, level, log_file)
        self.logger: Optional[logging.Logger] = None

    def setup_logging(self) -> logging.Logger:
        if self.logger is not None:
            return self.logger

        handlers = self._handlers()
        root = logging.getLogger()
        for handler in root.handlers[:]:
            root.removeHandler(handler)
        for handler in handlers:
            root.addHandler(handler)
        root.setLevel(min([self.settings.level] + [h.level for h in handlers]))

        for name in QUIET_LOGGERS:
            logging.getLogger(name).setLevel(logging.WARNING)

        self.logger = logging.getLogger("dtcheck")
        return self.logger

    def _handlers(self) -> List[logging.Handler]:
        handlers: List[logging.Handler] = []
        if self.settings.file_path:
            file_handler = self._file_handler(self.settings.file_path)
            if file_handler:
                handlers.append(file_handler)
        if self.settings.console:
            console = logging.StreamHandler(sys.stderr)
            console.setFormatter(logging.Formatter(CONSOLE_FORMAT))
            console.setLevel(self.settings.level)
            handlers.append(console)
        return handlers

    def _file_handler(self, path: str) -> Optional[RotatingFileHandler]:
        try:
            os.makedirs(os.path.dirname(path) or '.', exist_ok=True)
            handler = RotatingFileHandler(
                path, maxBytes=self.settings.max_bytes, backupCount=self.settings.backups, encoding='utf-8'
            )
        except OSError as e:
            sys.stderr.write(f"⚠️ Could not open log file {path}: {e}\n")
            return None
        handler.setFormatter(logging.Formatter(FILE_FORMAT))
        handler.setLevel(self.settings.file_level)
        return handler

    def cleanup(self):
        root = logging.getLogger()
        for handler in root.handlers[:]:
            handler.close()
            root.removeHandler(handler)
        self.logger = None


def setup_logging(config_module=None, level: Optional[int] = None, log_file: Optional[str] = None) -> logging.Logger:
    """Configure handlers and return the dtcheck logger"""
    return EnhancedLogger(config_module, level, log_file).setup_logging()


def log_system_info(logger: logging.Logger, config_module=None, additional_info: Optional[Dict] = None):
    """Write a run banner: interpreter, platform, cores and memory"""
    from performance import ResourceMonitor

    rows = {
        "Python": sys.version.split()[0],
        "Platform": platform.platform(),
        **ResourceMonitor(config_module).get_system_info(),
        **(additional_info or {}),
    }
    logger.info("=" * 50)
    for key, value in rows.items():
        logger.info(f"{key}: {value}")
    logger.info("=" * 50)
