#!/usr/bin/env python
"""
operations_manager.py

Append-only journal of CLI runs, one JSON record per line:

    {"message": ..., "source": ..., "operation_type": ..., "timestamp": ...}

The journal sits next to a command's outputs but is not one of them: its
timestamps differ between otherwise identical runs.
"""

import json
from datetime import datetime
from pathlib import Path
from typing import List, Optional, TextIO, Union

import pytz

from config.config_constants import OPERATIONS_LOG_FILENAME

OPERATION_TYPES = (
    "Command Started",
    "Command Completed",
    "Command Failed",
    "Manifest Replayed",
)


class OperationsLogger:
    def __init__(self, log_filename: Optional[Union[str, Path]] = None):
        if log_filename is None:
            log_filename = Path.cwd() / OPERATIONS_LOG_FILENAME
        self.log_filename = Path(log_filename)
        self.log_filename.parent.mkdir(parents=True, exist_ok=True)
        self._handle: Optional[TextIO] = open(self.log_filename, "a", encoding="utf-8")
        self.tz = pytz.utc

    def log(self, message: str, source: str = None, operation_type: str = None):
        if self._handle is None:
            raise ValueError(f"operations journal {self.log_filename} is closed")
        now = datetime.now(self.tz)
        record = {
            "message": message,
            "source": source or "",
            "operation_type": operation_type or "",
            "timestamp": now.isoformat(timespec="seconds"),
        }
        self._handle.write(json.dumps(record, ensure_ascii=False) + "\n")
        self._handle.flush()

    def close(self):
        if self._handle is not None:
            self._handle.close()
            self._handle = None

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        self.close()


def read_operations(log_filename: Union[str, Path]) -> List[dict]:
    """Reads every well-formed record back; malformed lines are skipped."""
    entries = []
    with open(log_filename, "r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            try:
                entries.append(json.loads(line))
            except json.JSONDecodeError:
                pass
    return entries
