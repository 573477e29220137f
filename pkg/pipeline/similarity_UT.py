#!/usr/bin/env python
import functools
import random
import time
import unittest

from pipeline.similarity import levenshtein, similarity


def brute_force_distance(a: str, b: str) -> int:
    """Plain recursive edit distance, memoised on suffix positions."""
    @functools.lru_cache(maxsize=None)
    def d(i, j):
        if i == len(a):
            return len(b) - j
        if j == len(b):
            return len(a) - i
        if a[i] == b[j]:
            return d(i + 1, j + 1)
        return 1 + min(d(i + 1, j + 1), d(i + 1, j), d(i, j + 1))
    return d(0, 0)


class TestLevenshtein(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(levenshtein("naue", "name"), 1)
        self.assertEqual(levenshtein("x", "x"), 0)
        self.assertEqual(levenshtein("kitten", "sitting"), 3)

    def test_word_sequences(self):
        self.assertEqual(levenshtein(["a", "b", "c"], ["a", "x", "c"]), 1)

    def test_matches_oracle_on_random_pairs(self):
        rng = random.Random(1234)
        alphabet = "abcd"
        started = time.monotonic()
        for _ in range(10000):
            a = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 8)))
            b = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 8)))
            self.assertEqual(levenshtein(a, b), brute_force_distance(a, b), (a, b))
        self.assertLess(time.monotonic() - started, 30.0)

    def test_metric_properties(self):
        rng = random.Random(99)
        words = ["".join(rng.choice("abc") for _ in range(rng.randint(0, 6))) for _ in range(40)]
        for a in words:
            self.assertEqual(levenshtein(a, a), 0)
            for b in words:
                self.assertEqual(levenshtein(a, b), levenshtein(b, a))
                self.assertEqual(levenshtein(a, b) == 0, a == b)
                for c in words[:8]:
                    self.assertLessEqual(levenshtein(a, c), levenshtein(a, b) + levenshtein(b, c))


class TestSimilarity(unittest.TestCase):
    def test_examples(self):
        self.assertAlmostEqual(similarity("naue", "name"), 0.75)
        self.assertEqual(similarity("abc", "abc"), 1.0)
        self.assertEqual(similarity("ab", "xy"), 0.0)

    def test_both_empty_is_identical(self):
        self.assertEqual(similarity("", ""), 1.0)

    def test_case_handling(self):
        self.assertEqual(similarity("Cookie", "cookie", case_insensitive=True), 1.0)
        self.assertAlmostEqual(similarity("Cookie", "cookie", case_insensitive=False), 5 / 6)

    def test_range(self):
        rng = random.Random(7)
        for _ in range(500):
            a = "".join(rng.choice("aB_") for _ in range(rng.randint(0, 7)))
            b = "".join(rng.choice("Ab-") for _ in range(rng.randint(1, 7)))
            value = similarity(a, b)
            self.assertGreaterEqual(value, 0.0)
            self.assertLessEqual(value, 1.0)
            self.assertEqual(similarity(a, a) if a else 1.0, 1.0)


if __name__ == "__main__":
    unittest.main()
