#!/usr/bin/env python
import os
import tempfile
import unittest

from config.config_models import NoiseConfig
from data.models import ErrorType, InjectionRecord
from experiments.synthetic_corpus import build_functions
from grammar.grammar_core import classify_statement
from noisy_channel.confusion_table import (
    ConfusionTable,
    default_confusion_table,
    format_confusion_table,
    parse_confusion_table,
    table_from_mapping,
)
from noisy_channel.error_injector import ErrorInjector, inject_errors
from noisy_channel.injection_log import (
    InjectionLog,
    format_injection_log,
    parse_injection_log,
    read_injection_log,
    replay_line,
    write_injection_log,
)
from pipeline.correction_pipeline import correct_sample
from utils.errors import InputFormatError

SPACE_ONLY = NoiseConfig(p_space=1.0, p_symbol=0.0, p_word=0.0)
WORD_ONLY = NoiseConfig(p_space=0.0, p_symbol=0.0, p_word=1.0)
SILENT = NoiseConfig(p_space=0.0, p_symbol=0.0, p_word=0.0)

CLEAN_LINES = [
    "def load_state(self, max_depth, lastValue):",
    "    self.itemCount = max_depth + 1",
    "    if lastValue == max_depth:",
    "        return self.itemCount",
    "    return None",
]


class TestConfusionTable(unittest.TestCase):
    def test_default_lookups(self):
        table = default_confusion_table()
        self.assertEqual(table.lookup("_"), "-")
        self.assertEqual(table.lookup(":"), ";")
        self.assertIsNone(table.lookup("x"))

    def test_digraphs_first(self):
        table = table_from_mapping({"-": "~", "->": "=>"})
        self.assertEqual(table.symbol_keys(), ["->", "-"])
        self.assertEqual(table.match_symbol("a->b", 1), "->")

    def test_word_substitutions_both_directions(self):
        table = ConfusionTable((), (("m", "u"),))
        self.assertEqual(table.word_substitutions("name"), [(2, "m", "u")])
        self.assertEqual(table.word_substitutions("naue"), [(2, "u", "m")])
        self.assertEqual(table.word_substitutions("xyz"), [])

    def test_invalid_pairs(self):
        with self.assertRaises(ValueError):
            ConfusionTable((("_", "_"),), ())
        with self.assertRaises(ValueError):
            ConfusionTable((("ab", "-"),), ())
        with self.assertRaises(ValueError):
            ConfusionTable((("_", "-"), ("_", "~")), ())

    def test_parse_and_format(self):
        table = parse_confusion_table("# pairs\n_\t-\n:\t;\nrn\tm\n")
        self.assertEqual(table.symbol_pairs, (("_", "-"), (":", ";")))
        self.assertEqual(table.char_pairs, (("rn", "m"),))
        self.assertEqual(parse_confusion_table(format_confusion_table(table)), table)

    def test_parse_errors(self):
        with self.assertRaises(InputFormatError):
            parse_confusion_table("_ -\n", source="t.tsv")
        with self.assertRaises(InputFormatError):
            parse_confusion_table("_\t_\n")


class TestInjector(unittest.TestCase):
    def test_space_in_camel_case(self):
        noisy, records = ErrorInjector(SPACE_ONLY).inject_line(0, "ConflictError")
        self.assertEqual(noisy, "Conflict Error")
        self.assertEqual(records, [InjectionRecord(0, 8, ErrorType.SPACE, "", " ")])

    def test_space_after_underscore_and_dot(self):
        noisy, records = ErrorInjector(SPACE_ONLY).inject_line(0, "x = self.max_depth")
        self.assertEqual(noisy, "x = self. max_ depth")
        self.assertEqual(len(records), 2)

    def test_word_error(self):
        table = ConfusionTable((), (("m", "u"),))
        noisy, records = ErrorInjector(WORD_ONLY, table).inject_line(3, "x = name")
        self.assertEqual(noisy, "x = naue")
        self.assertEqual(records, [InjectionRecord(3, 6, ErrorType.WORD, "m", "u")])

    def test_keywords_are_never_corrupted(self):
        table = ConfusionTable((), (("r", "n"), ("e", "c")))
        noisy, _ = ErrorInjector(WORD_ONLY, table).inject_line(0, "return")
        self.assertEqual(noisy, "return")

    def test_zero_noise_is_identity(self):
        noisy, log = ErrorInjector(SILENT).inject(CLEAN_LINES)
        self.assertEqual(noisy, CLEAN_LINES)
        self.assertEqual(len(log), 0)

    def test_same_seed_same_output(self):
        config = NoiseConfig(seed=42, p_space=0.3, p_symbol=0.3, p_word=0.3)
        first = inject_errors(CLEAN_LINES, config)
        second = inject_errors(CLEAN_LINES, config)
        self.assertEqual(first, second)

    def test_different_seeds_differ(self):
        outputs = {tuple(inject_errors(CLEAN_LINES, NoiseConfig(seed=s, p_space=0.5, p_word=0.5))[0])
                   for s in range(10)}
        self.assertGreater(len(outputs), 1)

    def test_untouched_lines(self):
        config = NoiseConfig(p_space=1.0, p_symbol=1.0, p_word=1.0)
        noisy, log = ErrorInjector(config).inject(CLEAN_LINES, untouched={0})
        self.assertEqual(noisy[0], CLEAN_LINES[0])
        self.assertFalse(log.for_line(0))

    def test_replay_reproduces_noisy_text(self):
        for seed in range(25):
            config = NoiseConfig(seed=seed, p_space=0.4, p_symbol=0.4, p_word=0.4)
            for sample in build_functions(3, seed=seed):
                clean = list(sample.source_lines)
                noisy, log = ErrorInjector(config).inject(clean)
                self.assertEqual(log.replay(clean), noisy)

    def test_log_counts_match_records(self):
        config = NoiseConfig(seed=1, p_space=1.0, p_symbol=0.0, p_word=0.0)
        _, log = ErrorInjector(config).inject(["lastValue = itemCount"])
        self.assertEqual(log.counts().space_errors, 2)
        self.assertEqual(log.counts().total, 2)


class TestInjectionLogFile(unittest.TestCase):
    def test_file_round_trip_and_replay(self):
        config = NoiseConfig(seed=9, p_space=0.5, p_symbol=0.5, p_word=0.5)
        noisy, log = ErrorInjector(config).inject(CLEAN_LINES)
        with tempfile.TemporaryDirectory() as tmp:
            path = write_injection_log(log, os.path.join(tmp, "log.tsv"))
            restored = read_injection_log(path)
        self.assertEqual(sorted(restored, key=lambda r: (r.line_index, r.position)),
                         sorted(log, key=lambda r: (r.line_index, r.position)))
        self.assertEqual(restored.replay(CLEAN_LINES), noisy)

    def test_space_record_survives_text_form(self):
        log = InjectionLog((InjectionRecord(0, 8, ErrorType.SPACE, "", " "),))
        self.assertEqual(parse_injection_log(format_injection_log(log)), log)

    def test_malformed_rows(self):
        with self.assertRaises(InputFormatError):
            parse_injection_log("0\tspace\t\t \n")
        with self.assertRaises(InputFormatError):
            parse_injection_log("0\tsmudge\ta\tb\t1\n")

    def test_replay_mismatch(self):
        record = InjectionRecord(0, 0, ErrorType.WORD, "m", "u")
        with self.assertRaises(InputFormatError):
            replay_line("name", [record])


class TestColonCorruption(unittest.TestCase):
    def test_every_colon_statement_ends_with_colon_after_correction(self):
        table = table_from_mapping({":": ";"})
        config = NoiseConfig(seed=3, p_space=0.0, p_symbol=1.0, p_word=0.0)
        injector = ErrorInjector(config, table)
        corrupted = 0
        for sample in build_functions(30, seed=3):
            noisy, log = injector.inject(sample.source_lines)
            corrupted += len(log)
            corrected, _ = correct_sample(noisy)
            for line in corrected:
                if classify_statement(line).requires_trailing_colon:
                    self.assertTrue(line.endswith(":"), line)
            self.assertEqual(corrected, list(sample.source_lines))
        self.assertGreater(corrupted, 0)


if __name__ == "__main__":
    unittest.main()
