#!/usr/bin/env python
import os
import tempfile
import unittest
from pathlib import Path

from config.config_models import CorpusConfig
from corpus.corpus_sampler import (
    INDEX_FILENAME,
    collect_functions,
    sample_filename,
    sample_functions,
    write_samples,
)
from corpus.function_extractor import (
    extract_functions,
    filter_eligible,
    is_eligible,
    is_repetitive,
    strip_comments,
)
from data.models import FunctionSample
from utils.errors import InsufficientCorpusError

NESTED_SOURCE = """\
import os

def outer(a):
    b = a  # keep b
    def inner(c):
        return c

    return inner(b)
"""

DOCSTRING_SOURCE = '''\
def documented(x):
    """Returns x.
    # this hash is inside the docstring
    """
    # a comment line
    return x
'''


MULTILINE_SOURCE = """\
def query(db):
    sql = \"\"\"
        SELECT name
        ORDER BY name
    \"\"\"
    return db.run(sql)

def call(a):
    return compute(a,
                   a)

def joined(a):
    b = a + \\
        1
    return b

def flat(a):
    b = [a, a]
    return b
"""


def _function(name: str, n_lines: int, long_line: bool = False) -> str:
    body = ["    x = a + 1"] * (n_lines - 1)
    if long_line:
        body[0] = "    y = " + "a" * 57
    return "\n".join([f"def {name}(a):"] + body) + "\n"


def _sample(n_lines: int, width: int = 10) -> FunctionSample:
    lines = ["def f(a):"] + ["x" * width] * (n_lines - 1)
    return FunctionSample(tuple(lines), "t.py", 1)


class TestStripComments(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(strip_comments("x = 1  # count"), "x = 1")
        self.assertEqual(strip_comments("s = '#not a comment'"), "s = '#not a comment'")
        self.assertEqual(strip_comments("# only comment"), "")

    def test_comment_lines_removed_blank_lines_kept(self):
        self.assertEqual(strip_comments("a = 1\n# note\n\nb = 2"), "a = 1\n\nb = 2")

    def test_hash_inside_docstring_survives(self):
        stripped = strip_comments(DOCSTRING_SOURCE)
        self.assertIn("# this hash is inside the docstring", stripped)
        self.assertNotIn("a comment line", stripped)


class TestExtract(unittest.TestCase):
    def test_single_function(self):
        samples = extract_functions(_function("ten", 10), "ten.py")
        self.assertEqual(len(samples), 1)
        self.assertEqual(len(samples[0]), 10)
        self.assertEqual(samples[0].origin, "ten.py:1")
        self.assertEqual(samples[0].source_lines[1], "x = a + 1")

    def test_nested(self):
        samples = extract_functions(NESTED_SOURCE)
        self.assertEqual([s.source_lines[0] for s in samples], ["def outer(a):", "def inner(c):"])
        self.assertEqual(samples[0].source_lines,
                         ("def outer(a):", "b = a", "def inner(c):", "return c", "return inner(b)"))
        self.assertEqual(samples[1].source_lines, ("def inner(c):", "return c"))
        self.assertEqual(samples[1].start_line, 5)

    def test_docstrings_dropped(self):
        samples = extract_functions(DOCSTRING_SOURCE)
        self.assertEqual(samples[0].source_lines, ("def documented(x):", "return x"))
        one_liner = extract_functions("def f(a):\n    \x27\x27\x27Says hi.\x27\x27\x27\n    return a\n")
        self.assertEqual(one_liner[0].source_lines, ("def f(a):", "return a"))

    def test_multi_line_statements_not_harvested(self):
        samples = extract_functions(MULTILINE_SOURCE)
        self.assertEqual([s.source_lines for s in samples], [("def flat(a):", "b = [a, a]", "return b")])
        self.assertEqual(samples[0].start_line, 17)

    def test_no_functions(self):
        self.assertEqual(extract_functions("x = 1\nprint(x)\n"), [])


class TestEligibility(unittest.TestCase):
    def test_bounds(self):
        self.assertFalse(is_eligible(_sample(8)))
        self.assertTrue(is_eligible(_sample(9)))
        self.assertTrue(is_eligible(_sample(18, width=60)))
        self.assertFalse(is_eligible(_sample(19)))
        self.assertFalse(is_eligible(_sample(12, width=61)))

    def test_repetitive(self):
        sample = FunctionSample(("def f(a):",) + ("x = a",) * 9, "t.py", 1)
        self.assertTrue(is_repetitive(sample))
        self.assertTrue(is_eligible(sample))
        self.assertFalse(is_eligible(sample, CorpusConfig(exclude_repetitive=True)))

    def test_filter_on_constructed_tree(self):
        expected = set()
        with tempfile.TemporaryDirectory() as tmp:
            for file_no in range(5):
                chunks = []
                for k in range(10):
                    i = file_no * 10 + k
                    n_lines, long_line = 5 + i % 16, i % 7 == 0
                    chunks.append(_function(f"f{i}", n_lines, long_line))
                    if 9 <= n_lines <= 18 and not long_line:
                        expected.add(f"def f{i}(a):")
                sub = Path(tmp, "pkg" if file_no % 2 else "")
                sub.mkdir(parents=True, exist_ok=True)
                (sub / f"mod{file_no}.py").write_text("\n".join(chunks), encoding="utf-8")
            Path(tmp, "notes.txt").write_text(_function("ignored", 10), encoding="utf-8")

            samples = collect_functions(tmp)
            self.assertEqual(len(samples), 50)
            eligible = filter_eligible(samples)
        self.assertEqual({s.source_lines[0] for s in eligible}, expected)


class TestSampling(unittest.TestCase):
    def setUp(self):
        self.pool = [FunctionSample((f"def f{i}(a):", "return a"), "t.py", i) for i in range(12)]

    def test_zero(self):
        self.assertEqual(sample_functions(self.pool, 0, seed=1), [])

    def test_full_draw_is_permutation(self):
        drawn = sample_functions(self.pool, len(self.pool), seed=1)
        self.assertCountEqual(drawn, self.pool)

    def test_same_seed_same_selection(self):
        self.assertEqual(sample_functions(self.pool, 5, seed=3), sample_functions(self.pool, 5, seed=3))

    def test_too_many(self):
        with self.assertRaises(InsufficientCorpusError) as ctx:
            sample_functions(self.pool, 13, seed=0)
        self.assertEqual(ctx.exception.exit_code, 3)

    def test_write_samples_and_index(self):
        chosen = sample_functions(self.pool, 3, seed=2)
        with tempfile.TemporaryDirectory() as tmp:
            written = write_samples(chosen, tmp)
            self.assertEqual([p.name for p in written], [sample_filename(s) for s in chosen])
            self.assertEqual(written[0].read_text(encoding="utf-8"), chosen[0].text + "\n")
            index = Path(tmp, INDEX_FILENAME).read_text(encoding="utf-8").splitlines()
            self.assertEqual(index, [f"{sample_filename(s)}\t{s.origin}" for s in chosen])
            self.assertEqual(len(os.listdir(tmp)), 4)


if __name__ == "__main__":
    unittest.main()
