#!/usr/bin/env python
"""
line_segmenter.py
Description:
    Breaks an InkSample into writing lines, one per source-code statement.

    Strokes are visited in time order. A stroke opens a new line when its
    vertical midpoint lies below the running band of the current line by more
    than line_gap_ratio x median stroke height. Strokes that return upwards
    (late i-dots, t-crossbars) join the existing line whose band they overlap
    most. Lines are emitted top-to-bottom.
"""

import logging
from typing import List, Tuple

import numpy as np

from data.models import InkSample, LineGroup, Stroke
from utils.errors import EmptySampleError

logger = logging.getLogger("InkLogger")

DEFAULT_LINE_GAP_RATIO = 0.6
MIN_STROKE_HEIGHT = 1.0


def stroke_bounds(stroke: Stroke) -> Tuple[float, float]:
    """Vertical extent (y_min, y_max) of a stroke."""
    return stroke.y_min, stroke.y_max


class _OpenLine:
    def __init__(self, index: int, stroke: Stroke):
        self.indices = [index]
        self.y_min, self.y_max = stroke_bounds(stroke)

    def add(self, index: int, stroke: Stroke):
        y_min, y_max = stroke_bounds(stroke)
        self.indices.append(index)
        self.y_min = min(self.y_min, y_min)
        self.y_max = max(self.y_max, y_max)

    def overlap(self, stroke: Stroke) -> float:
        return min(self.y_max, stroke.y_max) - max(self.y_min, stroke.y_min)

    @property
    def midpoint(self) -> float:
        return (self.y_min + self.y_max) / 2.0

    def to_group(self) -> LineGroup:
        return LineGroup(tuple(sorted(self.indices)), (self.y_min, self.y_max))


def median_stroke_height(sample: InkSample) -> float:
    heights = np.array([s.height for s in sample.strokes], dtype=float)
    return max(float(np.median(heights)), MIN_STROKE_HEIGHT)


def segment_lines(sample: InkSample, line_gap_ratio: float = DEFAULT_LINE_GAP_RATIO) -> List[LineGroup]:
    if not sample.strokes:
        raise EmptySampleError(f"ink sample {sample.sample_id!r} has no strokes")
    if not 0 < line_gap_ratio < 2:
        raise ValueError("line_gap_ratio must be in (0, 2)")

    threshold = line_gap_ratio * median_stroke_height(sample)
    lines: List[_OpenLine] = []
    current = None

    for index, stroke in enumerate(sample.strokes):
        mid = stroke.midpoint
        if current is None or mid > current.y_max + threshold:
            current = _OpenLine(index, stroke)
            lines.append(current)
        elif mid < current.y_min - threshold:
            # late stroke on an earlier line; writing continues on the current one
            target = max(lines, key=lambda line: (line.overlap(stroke), -abs(line.midpoint - mid)))
            if target.overlap(stroke) <= 0:
                target = min(lines, key=lambda line: abs(line.midpoint - mid))
            target.add(index, stroke)
        else:
            current.add(index, stroke)

    groups = sorted((line.to_group() for line in lines), key=lambda g: (g.vertical_band[0], g.stroke_indices[0]))
    logger.debug("Segmented %s into %d lines (threshold %.2f px)", sample.sample_id, len(groups), threshold)
    return groups
