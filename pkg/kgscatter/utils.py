import io
import json
import logging
import math
import os
import sys
from dataclasses import dataclass
from logging.handlers import RotatingFileHandler

import pandas as pd

from . import config

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def setup_logging(verbosity: int = 0, log_dir: str = None) -> logging.Logger:
    """
    設定 kgscatter 日誌：主控台輸出到 stderr（stdout 保留給 CSV/JSON），
    指定 log_dir 時另寫入輪替檔案。
    """
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG

    logger = logging.getLogger("kgscatter")
    logger.setLevel(logging.DEBUG)
    logger.handlers.clear()
    logger.propagate = False

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(logging.Formatter(LOG_FORMAT, DATE_FORMAT))
    logger.addHandler(console_handler)

    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        file_handler = RotatingFileHandler(
            os.path.join(log_dir, "kgscatter.log"),
            maxBytes=10 * 1024 * 1024,
            backupCount=5,
            encoding="utf-8",
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT, DATE_FORMAT))
        logger.addHandler(file_handler)

        error_handler = RotatingFileHandler(
            os.path.join(log_dir, "kgscatter_error.log"),
            maxBytes=10 * 1024 * 1024,
            backupCount=5,
            encoding="utf-8",
        )
        error_handler.setLevel(logging.ERROR)
        error_handler.setFormatter(logging.Formatter(LOG_FORMAT, DATE_FORMAT))
        logger.addHandler(error_handler)

    return logger


def fmt(value, digits: int = config.SIG_DIGITS) -> str:
    """CSV cell text: floats at ``digits`` significant digits, bools lowercase."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if value == 0.0:
            return "0"
        return format(value, f".{digits}g")
    return str(value)


def json_value(value, digits: int = config.SIG_DIGITS):
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return float(fmt(value, digits))
    return str(value)


def to_csv(rows, columns) -> str:
    frame = pd.DataFrame(
        [[fmt(row.get(col)) for col in columns] for row in rows],
        columns=list(columns),
        dtype=object,
    )
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def to_json(rows, columns) -> str:
    payload = [{col: json_value(row.get(col)) for col in columns} for row in rows]
    return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"


def render(rows, columns, output_format: str = config.DEFAULT_FORMAT) -> str:
    if output_format == "json":
        return to_json(rows, columns)
    if output_format == "csv":
        return to_csv(rows, columns)
    raise ValueError(f"不支援的輸出格式: {output_format}。目前只支援 csv、json")


_COLORS = {"green": "\033[32m", "red": "\033[31m", "yellow": "\033[33m"}


def colorize(text: str, color: str, stream=None) -> str:
    """ANSI color unless NO_COLOR is set or the stream is not a terminal."""
    stream = stream or sys.stdout
    if "NO_COLOR" in os.environ or not getattr(stream, "isatty", lambda: False)():
        return text
    return f"{_COLORS[color]}{text}\033[0m"


def circle_distance(x: float, y: float, period: float) -> float:
    """Distance between two angles on a circle of circumference ``period``."""
    return abs(math.remainder(x - y, period))


@dataclass(frozen=True)
class CheckResult:
    """One acceptance or structural check, as printed by ``validate`` and ``table``."""

    name: str
    passed: bool
    measured: float
    threshold: float
    detail: str = ""
