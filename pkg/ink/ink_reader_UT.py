#!/usr/bin/env python
import json
import os
import tempfile
import unittest

from data.models import InkPoint, InkSample, Stroke
from ink.ink_reader import load_ink_file, parse_ink_file
from ink.line_segmenter import median_stroke_height, segment_lines
from utils.errors import EmptySampleError, InkFormatError


def vertical_stroke(x, y_mid, t, half_height=20.0):
    """Three-point down-stroke centred on y_mid."""
    return {"points": [[x, y_mid - half_height, t], [x, y_mid, t + 5], [x, y_mid + half_height, t + 10]]}


def ink_document(strokes, sample_id="s1", writer_id="w01", **extra):
    doc = {"sample_id": sample_id, "writer_id": writer_id, "strokes": strokes}
    doc.update(extra)
    return json.dumps(doc)


# 5 strokes in the band y 80-120, then 4 in the band 280-320; stroke height 40
TWO_ROWS = [vertical_stroke(10 + 30 * i, 100, 100 * i) for i in range(5)] + \
           [vertical_stroke(10 + 30 * i, 300, 1000 + 100 * i) for i in range(4)]


def to_sample(strokes, sample_id="s1"):
    return InkSample(sample_id, "w01", tuple(
        Stroke(tuple(InkPoint(*p) for p in s["points"])) for s in strokes
    ))


class TestParseInk(unittest.TestCase):
    def test_single_stroke(self):
        sample = parse_ink_file(ink_document([vertical_stroke(5, 50, 0)]))
        self.assertEqual(len(sample), 1)
        self.assertEqual(len(sample.strokes[0].points), 3)
        self.assertEqual(sample.strokes[0].points[1], InkPoint(5, 50, 5))

    def test_bytes_and_unknown_keys(self):
        data = ink_document([vertical_stroke(5, 50, 0)], device="tablet").encode("utf-8")
        sample = parse_ink_file(data)
        self.assertEqual((sample.sample_id, sample.writer_id), ("s1", "w01"))

    def test_strokes_reordered_by_time(self):
        late, early = vertical_stroke(5, 50, 500), vertical_stroke(9, 50, 10)
        sample = parse_ink_file(ink_document([late, early]))
        self.assertEqual([s.start_time for s in sample.strokes], [10, 500])

    def test_missing_points_names_path(self):
        with self.assertRaises(InkFormatError) as ctx:
            parse_ink_file(ink_document([vertical_stroke(5, 50, 0), {"pts": []}]))
        self.assertEqual(ctx.exception.path, "strokes[1].points")
        self.assertEqual(ctx.exception.exit_code, 2)

    def test_bad_points(self):
        for points in ([[1, 2]], [[1, -2, 0]], [[0, 0, 5], [0, 1, 4]], []):
            with self.subTest(points=points):
                with self.assertRaises(InkFormatError):
                    parse_ink_file(ink_document([{"points": points}]))

    def test_not_json(self):
        with self.assertRaises(InkFormatError):
            parse_ink_file("{strokes:")
        with self.assertRaises(InkFormatError):
            parse_ink_file("[1, 2]")

    def test_empty_strokes(self):
        with self.assertRaises(EmptySampleError):
            parse_ink_file(ink_document([]))

    def test_load_from_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "sample.json")
            with open(path, "w", encoding="utf-8") as f:
                f.write(ink_document(TWO_ROWS))
            self.assertEqual(len(load_ink_file(path)), 9)


class TestSegmentLines(unittest.TestCase):
    def test_two_rows(self):
        sample = to_sample(TWO_ROWS)
        self.assertEqual(median_stroke_height(sample), 40.0)
        groups = segment_lines(sample, 0.6)
        self.assertEqual([len(g.stroke_indices) for g in groups], [5, 4])
        self.assertEqual(groups[0].stroke_indices, (0, 1, 2, 3, 4))
        self.assertEqual(groups[0].vertical_band, (80.0, 120.0))
        self.assertEqual(groups[1].vertical_band, (280.0, 320.0))

    def test_single_stroke(self):
        groups = segment_lines(to_sample([vertical_stroke(5, 50, 0)]))
        self.assertEqual([g.stroke_indices for g in groups], [(0,)])

    def test_single_band(self):
        strokes = [vertical_stroke(10 * i, 100 + (i % 3), 10 * i) for i in range(8)]
        self.assertEqual(len(segment_lines(to_sample(strokes))), 1)

    def test_late_stroke_joins_earlier_line(self):
        # an i-dot added to the first row after the second row was started
        dot = vertical_stroke(40, 100, 2000, half_height=10)
        groups = segment_lines(to_sample(TWO_ROWS + [dot]))
        self.assertEqual(len(groups), 2)
        self.assertEqual(groups[0].stroke_indices, (0, 1, 2, 3, 4, 9))

    def test_partition_and_order(self):
        strokes = [vertical_stroke(10, 100 + 150 * (i // 3), 10 * i) for i in range(12)]
        groups = segment_lines(to_sample(strokes))
        indices = sorted(i for g in groups for i in g.stroke_indices)
        self.assertEqual(indices, list(range(12)))
        bands = [g.vertical_band[0] for g in groups]
        self.assertEqual(bands, sorted(bands))
        self.assertEqual(len(groups), 4)

    def test_deterministic_and_repeatable(self):
        sample = to_sample(TWO_ROWS)
        first = segment_lines(sample)
        for _ in range(100):
            self.assertEqual(segment_lines(sample), first)

    def test_invalid_arguments(self):
        with self.assertRaises(EmptySampleError):
            segment_lines(InkSample("s", "w", ()))
        with self.assertRaises(ValueError):
            segment_lines(to_sample(TWO_ROWS), 2.5)


if __name__ == "__main__":
    unittest.main()
