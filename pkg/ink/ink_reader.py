#!/usr/bin/env python
"""
ink_reader.py
Description:
    Reads stroke-capture files into InkSample values.

    File format (UTF-8 JSON):
        {
          "sample_id": "s1",
          "writer_id": "w07",
          "strokes": [ {"points": [[x, y, t], ...]}, ... ]
        }
    Unknown keys are ignored. Strokes are reordered by first-point timestamp.
"""

import json
import logging
from pathlib import Path
from typing import List, Union

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from data.models import InkPoint, InkSample, Stroke
from utils.errors import EmptySampleError, InkFormatError

logger = logging.getLogger("InkLogger")


class _StrokeRecord(BaseModel):
    model_config = ConfigDict(extra="ignore")

    points: List[List[float]]

    @field_validator("points")
    @classmethod
    def _triples(cls, points):
        if not points:
            raise ValueError("stroke has no points")
        for i, point in enumerate(points):
            if len(point) != 3:
                raise ValueError(f"point {i} must be an [x, y, t] triple")
            if min(point) < 0:
                raise ValueError(f"point {i} has a negative coordinate or timestamp")
        for i in range(1, len(points)):
            if points[i][2] < points[i - 1][2]:
                raise ValueError(f"point {i} timestamp goes backwards")
        return points


class _InkRecord(BaseModel):
    model_config = ConfigDict(extra="ignore")

    sample_id: str
    writer_id: str
    strokes: List[_StrokeRecord]


def _format_loc(loc) -> str:
    path = ""
    for part in loc:
        if isinstance(part, int):
            path += f"[{part}]"
        else:
            path += f".{part}" if path else str(part)
    return path


def parse_ink_file(data: Union[bytes, str]) -> InkSample:
    """
    Parses an ink document. Raises InkFormatError naming the offending path,
    or EmptySampleError when the strokes array is empty.
    """
    try:
        raw = json.loads(data.decode("utf-8") if isinstance(data, bytes) else data)
    except UnicodeDecodeError as e:
        raise InkFormatError("", f"not UTF-8 text: {e}") from e
    except json.JSONDecodeError as e:
        raise InkFormatError("", f"not a JSON document: {e.msg} at line {e.lineno} column {e.colno}") from e

    if not isinstance(raw, dict):
        raise InkFormatError("", "top level must be an object")

    try:
        record = _InkRecord.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        raise InkFormatError(_format_loc(first["loc"]), first["msg"]) from e

    if not record.strokes:
        raise EmptySampleError(f"ink sample {record.sample_id!r} has no strokes")

    strokes = [
        Stroke(tuple(InkPoint(x, y, t) for x, y, t in s.points))
        for s in record.strokes
    ]
    # stable sort keeps file order for equal start times
    strokes.sort(key=lambda s: s.start_time)
    logger.debug("Parsed ink sample %s (%d strokes)", record.sample_id, len(strokes))
    return InkSample(record.sample_id, record.writer_id, tuple(strokes))


def load_ink_file(path: Union[str, Path]) -> InkSample:
    return parse_ink_file(Path(path).read_bytes())
