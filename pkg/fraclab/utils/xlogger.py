"""
Lab logger shared by every FracLab subsystem.

Each record goes to two places:
1. ``data/logs/fraclab.log`` as one JSON object per line, rotated at midnight
   into ``data/logs/daily/<YYYYMMDD>_fraclab.log``
2. the console as a short colored line (disabled with FRACLAB_LOG_CONSOLE=false)

Records carry a ``category`` naming the subsystem (spectral, oracle, mellin,
evolve, monitor, cli, runner, ...) and an optional ``data`` payload; numpy
scalars and arrays in the payload are written as plain JSON numbers and lists.
"""

import os
import json
import logging
import inspect
import time

from datetime import datetime
from logging.handlers import TimedRotatingFileHandler
from fraclab.config.settings import settings

LEVEL_COLORS = {
    "DEBUG": "\033[34m",
    "INFO": "\033[32m",
    "WARNING": "\033[33m",
    "ERROR": "\033[31m",
    "CRITICAL": "\033[35m",
}
RESET = "\033[0m"


class LevelColorFormatter(logging.Formatter):
    """Console formatter painting the whole line in the color of its level."""

    def format(self, record):
        line = super().format(record)
        return f"{LEVEL_COLORS.get(record.levelname, '')}{line}{RESET}"


def daily_rotation_handler(log_dir: str, log_filename: str, keep_days: int = 7) -> TimedRotatingFileHandler:
    """Midnight-rotated file handler whose rotated files land in ``log_dir/daily``."""
    handler = TimedRotatingFileHandler(os.path.join(log_dir, log_filename), when="midnight",
                                       backupCount=keep_days, encoding="utf-8", delay=True)

    def namer(default_name: str) -> str:
        stamp = time.strftime("%Y%m%d", time.localtime(handler.rolloverAt - handler.interval))
        daily = os.path.join(log_dir, "daily")
        os.makedirs(daily, exist_ok=True)
        return os.path.join(daily, f"{stamp}_{log_filename}")

    handler.namer = namer
    handler.setFormatter(logging.Formatter("%(message)s"))
    return handler


def _json_default(obj):
    # numpy scalars expose item(), arrays tolist(); anything else is stringified
    for attr in ("tolist", "item"):
        if hasattr(obj, attr):
            try:
                return getattr(obj, attr)()
            except (TypeError, ValueError):
                pass
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return str(obj)


class CustomJSONLogger:
    """Singleton writing JSON records to file and short lines to the console."""

    _instance = None

    @classmethod
    def get_instance(cls) -> "CustomJSONLogger":
        if cls._instance is None:
            cls._instance = cls(
                log_dir=settings.XLOGGER_LOG_DIR,
                log_filename=settings.XLOGGER_LOG_FILENAME,
                version=settings.XLOGGER_LOG_VER,
                console_output=settings.XLOGGER_CONSOLE,
                level=settings.XLOGGER_LEVEL,
            )
        return cls._instance

    def __init__(self, log_dir: str, log_filename: str, version: str,
                 console_output: bool = True, level: str = "INFO"):
        """
        Args:
            log_dir: Directory of the JSON log file
            log_filename: Name of the JSON log file
            version: Package version stamped on every record
            console_output: Mirror records to stderr
            level: Lowest level name that is emitted; unknown names mean INFO
        """
        self.version = version
        threshold = logging.getLevelName(str(level).upper())
        self.threshold = threshold if isinstance(threshold, int) else logging.INFO

        os.makedirs(log_dir, exist_ok=True)
        self.logger = logging.getLogger("fraclab")
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False

        self.file_handler = daily_rotation_handler(log_dir, log_filename)
        self.console_handler = None
        if console_output:
            self.console_handler = logging.StreamHandler()
            self.console_handler.setFormatter(LevelColorFormatter("%(message)s"))

    @staticmethod
    def _caller():
        """(file:line, class name or None) of the first frame outside this module."""
        frame = inspect.currentframe()
        while frame is not None and frame.f_code.co_filename == __file__:
            frame = frame.f_back
        if frame is None:
            return None, None
        owner = frame.f_locals.get("self")
        return (f"{os.path.basename(frame.f_code.co_filename)}:{frame.f_lineno}",
                type(owner).__name__ if owner is not None else None)

    def _emit(self, handler, level: int, text: str) -> None:
        if handler is not None:
            handler.handle(logging.LogRecord(self.logger.name, level, "", 0, text, (), None))

    def log(self, message, data=None, level: int = logging.DEBUG, category=None, tags=None) -> None:
        """
        Write one record.

        Args:
            message: Human-readable text
            data: Dict merged into the record, or any other value stored under "data"
            level: logging level number
            category: Subsystem name; defaults to the calling file
            tags: Optional list of labels for filtering
        """
        if level < self.threshold:
            return
        where, owner = self._caller()
        if category is None and where is not None:
            category = where.split(":")[0]

        record = {
            "time": datetime.now().strftime("%Y-%m-%d %H:%M:%S.%f")[:-3],
            "version": self.version,
            "level": logging.getLevelName(level),
            "category": category,
            "tags": tags,
            "env": os.getenv("PROJ_ENV", settings.PROJ_ENV),
            "message": {"text": str(message)},
        }
        if level >= logging.ERROR:
            record["message"]["line"] = where
            if owner:
                record["message"]["classname"] = owner
        if isinstance(data, dict):
            record["message"].update(data)
        elif data is not None:
            record["message"]["data"] = data

        self._emit(self.file_handler, level,
                   json.dumps(record, ensure_ascii=False, separators=(",", ":"), default=_json_default))
        self._emit(self.console_handler, level,
                   f"{record['time']} - {record['level']} - {category}: {record['message']['text']}")

    def debug(self, message, data=None, category=None, tags=None) -> None:
        self.log(message, data, logging.DEBUG, category, tags)

    def info(self, message, data=None, category=None, tags=None) -> None:
        self.log(message, data, logging.INFO, category, tags)

    def warning(self, message, data=None, category=None, tags=None) -> None:
        self.log(message, data, logging.WARNING, category, tags)

    def error(self, message, data=None, category=None, tags=None) -> None:
        self.log(message, data, logging.ERROR, category, tags)


# Create global logger instance
logger = CustomJSONLogger.get_instance()
