"""
Logging for monotest
One 'monotest' logger shared by the library and the harness.  Console
output goes to stderr because stdout carries result payloads; sweep worker
processes each get their own log file so parallel runs never interleave.
"""
import logging
import os
import sys
from typing import Optional, Tuple
from .config import Config

LOGGER_NAME = 'monotest'
DEFAULT_FORMAT = '[%(asctime)s] [%(levelname)s] [%(name)s] %(message)s'


def worker_log_path(file_path: str, worker: str) -> str:
    """'runs/monotest.log' -> 'runs/monotest.worker-<tag>.log'"""
    stem, suffix = os.path.splitext(file_path)
    return f"{stem}.worker-{worker}{suffix or '.log'}"


class LoggerManager:
    """Owns the handlers of the monotest logger for the current process"""

    _instance = None
    _initialized = False

    def __new__(cls, config_path: Optional[str] = None):
        if cls._instance is None:
            cls._instance = super(LoggerManager, cls).__new__(cls)
        return cls._instance

    def __init__(self, config_path: Optional[str] = None):
        if self._initialized:
            return

        self.config_path = config_path
        self.config = Config(config_path)
        self.worker: Optional[str] = None
        self.logger = None
        self._setup_logger()
        self._initialized = True

    def _setup_logger(self):
        log_config = self.config.get_logging_config()

        self.logger = logging.getLogger(LOGGER_NAME)
        self.logger.setLevel(self._get_log_level(log_config.get('level', 'INFO')))
        self.logger.propagate = False

        for handler in self.logger.handlers:
            handler.close()
        self.logger.handlers.clear()

        log_format = log_config.get('format', DEFAULT_FORMAT)
        if self.worker is not None:
            log_format = log_format.replace('%(name)s', f'%(name)s:{self.worker}')
        formatter = logging.Formatter(log_format)

        if log_config.get('console_output', True):
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setFormatter(formatter)
            self.logger.addHandler(console_handler)

        if log_config.get('file_output', False):
            file_path = self.log_file_path()
            try:
                file_handler = logging.FileHandler(file_path, encoding='utf-8')
                file_handler.setFormatter(formatter)
                self.logger.addHandler(file_handler)
            except OSError as e:
                print(f"Could not create log file {file_path}: {e}", file=sys.stderr)

    @staticmethod
    def _get_log_level(level) -> int:
        """'debug', 'INFO', ... or a numeric level; unknown names fall back to INFO"""
        if isinstance(level, int):
            return level
        resolved = logging.getLevelName(str(level).upper())
        return resolved if isinstance(resolved, int) else logging.INFO

    def log_file_path(self) -> str:
        """Configured log file, suffixed with the worker tag inside a sweep worker"""
        file_path = self.config.get_logging_config().get('file_path', 'monotest.log')
        if self.worker is None:
            return file_path
        return worker_log_path(file_path, self.worker)

    def get_logger(self):
        if not self.logger:
            self._setup_logger()
        return self.logger

    def reload_config(self, config_path: Optional[str] = None):
        """Reload configuration and rebuild the handlers"""
        self.config_path = config_path
        self.config = Config(config_path)
        self._setup_logger()

    def set_level(self, level):
        """Override the configured level (the CLI --verbose/--quiet flags)"""
        self.get_logger().setLevel(self._get_log_level(level))

    def become_worker(self, worker: str, level: int):
        """Re-point the handlers at this worker's own log file"""
        self.worker = worker
        self._setup_logger()
        self.logger.setLevel(level)

    def worker_settings(self) -> Tuple[Optional[str], int]:
        """What a pool initializer needs to reproduce this process's logging"""
        return self.config_path, self.get_logger().level


# Convenience functions
def get_logger():
    return LoggerManager().get_logger()


def debug(message: str, *args, **kwargs):
    get_logger().debug(message, *args, **kwargs)


def info(message: str, *args, **kwargs):
    get_logger().info(message, *args, **kwargs)


def warning(message: str, *args, **kwargs):
    get_logger().warning(message, *args, **kwargs)


def error(message: str, *args, **kwargs):
    get_logger().error(message, *args, **kwargs)


def critical(message: str, *args, **kwargs):
    get_logger().critical(message, *args, **kwargs)


def init_logging(config_path: Optional[str] = None):
    """Initialize the logging system"""
    manager = LoggerManager(config_path)
    if config_path:
        manager.reload_config(config_path)
    return manager


def worker_logging_args() -> Tuple[Optional[str], int]:
    """initargs for init_worker_logging, taken from the parent process"""
    return LoggerManager().worker_settings()


def init_worker_logging(config_path: Optional[str], level: int):
    """ProcessPoolExecutor initializer: same config and level, per-worker file"""
    manager = LoggerManager(config_path)
    if config_path != manager.config_path:
        manager.config_path = config_path
        manager.config = Config(config_path)
    manager.become_worker(str(os.getpid()), level)
