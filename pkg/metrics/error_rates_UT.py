#!/usr/bin/env python
import json
import random
import unittest

from data.models import EditOpType, ErrorBreakdown, ErrorType, SampleResult
from metrics.alignment import align
from metrics.error_rates import (
    aggregate_report,
    cer,
    classify_errors,
    evaluate_sample,
    fix_rates,
    wer,
)
from metrics.report_writer import format_report, format_report_json, parse_report
from noisy_channel.confusion_table import ConfusionTable
from noisy_channel.error_injector import ErrorInjector
from config.config_models import NoiseConfig
from experiments.synthetic_corpus import build_functions
from pipeline.similarity import levenshtein
from utils.errors import InputFormatError, UndefinedRateError

TAXONOMY_CASES = [
    ("ConflictError", "Conflict Error", ErrorBreakdown(0, 0, 1)),
    ("self", "silt", ErrorBreakdown(1, 0, 0)),
    ("a_b", "a-b", ErrorBreakdown(0, 1, 0)),
]

GOLDEN_REPORT = (
    "sample_id,writer_id,wer,cer,word_errors,symbol_errors,space_errors\n"
    "s1,w1,12.50,3.10,1,0,2\n"
    "# group,s1,1,12.50,3.10,1.00,0.00,2.00\n"
)


def _result(sample_id, wer_value, writer_id="w1", breakdown=ErrorBreakdown()):
    return SampleResult(sample_id, writer_id, wer_value, wer_value / 2, breakdown)


class TestAlign(unittest.TestCase):
    def test_identity(self):
        alignment = align(list("abc"), list("abc"))
        self.assertEqual((alignment.D, alignment.I, alignment.S), (0, 0, 0))
        self.assertEqual(alignment.matches, 3)

    def test_examples(self):
        alignment = align(["a", "b", "c"], ["a", "x", "c"])
        self.assertEqual((alignment.D, alignment.I, alignment.S, alignment.L), (0, 0, 1, 3))
        deletion = align(["a"], [])
        self.assertEqual((deletion.D, deletion.I, deletion.S), (1, 0, 0))
        insertion = align([], ["a"])
        self.assertEqual(insertion.ops[0].op, EditOpType.INSERT)

    def test_substitute_preferred_to_delete_insert(self):
        alignment = align(["a"], ["b"])
        self.assertEqual([op.op for op in alignment.ops], [EditOpType.SUBSTITUTE])

    def test_cost_and_replay_against_levenshtein(self):
        rng = random.Random(5)
        for _ in range(2000):
            ref = [rng.choice("abc") for _ in range(rng.randint(0, 7))]
            hyp = [rng.choice("abc") for _ in range(rng.randint(0, 7))]
            alignment = align(ref, hyp)
            self.assertEqual(alignment.cost, levenshtein(ref, hyp), (ref, hyp))
            self.assertEqual(alignment.replay(ref), hyp)
            self.assertEqual(alignment.D + alignment.S + alignment.matches, len(ref))


class TestRates(unittest.TestCase):
    def test_wer_examples(self):
        self.assertEqual(wer("return x", "return x"), 0.0)
        self.assertAlmostEqual(wer("a b c", "a x c"), 33.333, places=2)
        self.assertAlmostEqual(wer("if cookie.name == name:", "if cookie. name == naue ;"), 100.0)

    def test_cer_examples(self):
        self.assertEqual(cer("abc", "abc"), 0.0)
        self.assertAlmostEqual(cer("name", "naue"), 25.0)
        self.assertAlmostEqual(cer("ab", "abc"), 50.0)

    def test_rates_can_exceed_100(self):
        self.assertGreater(wer("a", "a b c"), 100.0)

    def test_empty_reference(self):
        with self.assertRaises(UndefinedRateError):
            wer("   ", "x")
        with self.assertRaises(UndefinedRateError):
            cer("", "x")


class TestTaxonomy(unittest.TestCase):
    def test_labelled_examples(self):
        for ref, hyp, expected in TAXONOMY_CASES:
            with self.subTest(ref=ref, hyp=hyp):
                self.assertEqual(classify_errors(ref, hyp), expected)

    def test_identical_has_no_errors(self):
        self.assertEqual(classify_errors("x = 1", "x = 1"), ErrorBreakdown())

    def test_counts_match_injection_log(self):
        table = ConfusionTable((("_", "-"),), (("m", "u"),))
        config = NoiseConfig(seed=0, p_space=1.0, p_symbol=1.0, p_word=1.0)
        clean = "lastValue = max_depth + name"
        noisy, records = ErrorInjector(config, table).inject_line(0, clean)
        self.assertEqual(noisy, "last Valme = uax-depth + naue")
        logged = ErrorBreakdown(
            sum(1 for r in records if r.error_type == ErrorType.WORD),
            sum(1 for r in records if r.error_type == ErrorType.SYMBOL),
            sum(1 for r in records if r.error_type == ErrorType.SPACE),
        )
        self.assertEqual(logged, ErrorBreakdown(3, 1, 1))
        self.assertEqual(classify_errors(clean, noisy), logged)


    def test_words_split_at_punctuation(self):
        breakdown = classify_errors("timeout = file_path(handler, 5)", "timeout = file_poth(haudler, 5)")
        self.assertEqual(breakdown, ErrorBreakdown(2, 0, 0))
        self.assertEqual(classify_errors("self.value", "silt.valne").word_errors, 2)

    def test_low_noise_counts_agree_with_log(self):
        corrupted = 0
        for seed in range(10):
            injector = ErrorInjector(NoiseConfig(p_space=0.05, p_symbol=0.05, p_word=0.05, seed=seed))
            for sample in build_functions(30, seed=seed):
                noisy, log = injector.inject(sample.source_lines)
                for index, records in log.by_line().items():
                    logged = ErrorBreakdown(
                        sum(1 for r in records if r.error_type == ErrorType.WORD),
                        sum(1 for r in records if r.error_type == ErrorType.SYMBOL),
                        sum(1 for r in records if r.error_type == ErrorType.SPACE),
                    )
                    clean = sample.source_lines[index]
                    self.assertEqual(classify_errors(clean, noisy[index]), logged, (seed, clean, noisy[index]))
                    corrupted += 1
        self.assertGreater(corrupted, 100)


class TestSampleEvaluation(unittest.TestCase):
    def test_pooled_and_per_line(self):
        ref, hyp = ["a b c", "x"], ["a x c", "x"]
        pooled = evaluate_sample("s1", "w1", ref, hyp)
        self.assertAlmostEqual(pooled.wer, 25.0)
        per_line = evaluate_sample("s1", "w1", ref, hyp, per_line=True)
        self.assertAlmostEqual(per_line.wer, 50.0 / 3, places=4)

    def test_taxonomy_summed_over_lines(self):
        refs = [ref for ref, _, _ in TAXONOMY_CASES]
        hyps = [hyp for _, hyp, _ in TAXONOMY_CASES]
        result = evaluate_sample("s1", "w1", refs, hyps)
        self.assertEqual(result.breakdown, ErrorBreakdown(1, 1, 1))

    def test_line_count_mismatch_aligns_whole_text(self):
        result = evaluate_sample("s1", "w1", ["a", "b"], ["a"])
        self.assertAlmostEqual(result.wer, 50.0)


class TestAggregate(unittest.TestCase):
    def test_means(self):
        summaries = aggregate_report([_result("s1", 10.0), _result("s1", 20.0), _result("s2", 30.0)])
        self.assertEqual([(s.sample_id, s.count, s.mean_wer) for s in summaries],
                         [("s1", 2, 15.0), ("s2", 1, 30.0)])

    def test_single_result(self):
        summary = aggregate_report([_result("s1", 12.0, breakdown=ErrorBreakdown(1, 2, 3))])[0]
        self.assertEqual(summary.mean_wer, 12.0)
        self.assertEqual(summary.mean_space_errors, 3.0)

    def test_empty(self):
        with self.assertRaises(UndefinedRateError):
            aggregate_report([])

    def test_fix_rates(self):
        rates = fix_rates(ErrorBreakdown(4, 0, 2), ErrorBreakdown(1, 0, 0))
        self.assertEqual(rates[ErrorType.WORD], 0.75)
        self.assertIsNone(rates[ErrorType.SYMBOL])
        self.assertEqual(rates[ErrorType.SPACE], 1.0)


class TestReport(unittest.TestCase):
    def setUp(self):
        self.results = [SampleResult("s1", "w1", 12.5, 3.1, ErrorBreakdown(1, 0, 2))]

    def test_text_format(self):
        self.assertEqual(format_report(self.results), GOLDEN_REPORT)

    def test_parse_skips_footer(self):
        records = parse_report(GOLDEN_REPORT)
        self.assertEqual(records, [{
            "sample_id": "s1", "writer_id": "w1", "wer": 12.5, "cer": 3.1,
            "word_errors": 1, "symbol_errors": 0, "space_errors": 2,
        }])

    def test_parse_rejects_bad_header(self):
        with self.assertRaises(InputFormatError):
            parse_report("id,wer\ns1,1\n")

    def test_json(self):
        payload = json.loads(format_report_json(self.results, fix_rates={ErrorType.WORD: 0.5,
                                                                         ErrorType.SYMBOL: None,
                                                                         ErrorType.SPACE: 1.0}))
        self.assertEqual(payload["results"][0]["space_errors"], 2)
        self.assertEqual(payload["groups"][0]["count"], 1)
        self.assertEqual(payload["fix_rates"], {"word": 0.5, "symbol": None, "space": 1.0})


if __name__ == "__main__":
    unittest.main()
