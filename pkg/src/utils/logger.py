"""JSON log lines for engine runs."""

import json
import logging
import sys
from datetime import datetime
from fractions import Fraction
from typing import Any, Dict


class JSONFormatter(logging.Formatter):
    """One JSON object per record; exact rationals in extras become "p/q"."""

    def format(self, record: logging.LogRecord) -> str:
        entry = {
            "timestamp": datetime.utcnow().isoformat() + "Z",
            "level": record.levelname,
            "message": record.getMessage(),
            "logger": record.name,
            "function": record.funcName,
        }
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        extra = getattr(record, "extra_fields", None)
        if extra:
            entry.update(summarize_fractions(extra))
        return json.dumps(entry, default=str)


def summarize_fractions(data: Dict[str, Any]) -> Dict[str, Any]:
    """Render exact rationals as "p/q" strings so log lines stay JSON."""
    return {
        k: f"{v.numerator}/{v.denominator}" if isinstance(v, Fraction) else v
        for k, v in data.items()
    }


def get_logger(name: str, level: str = "INFO") -> logging.Logger:
    """Logger with a single stderr handler; reports own stdout."""
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, level.upper()))
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(JSONFormatter())
        logger.addHandler(handler)
        logger.propagate = False
    return logger


def set_level(level: str) -> None:
    """Apply a level to every logger created through get_logger."""
    numeric = getattr(logging, level.upper())
    logging.getLogger().setLevel(numeric)
    for name in list(logging.root.manager.loggerDict):
        if name == "src" or name.startswith("src."):
            logging.getLogger(name).setLevel(numeric)
