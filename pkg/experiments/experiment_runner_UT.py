#!/usr/bin/env python
import itertools
import unittest

from config.config_models import CorrectionConfig, NoiseConfig
from corpus.function_extractor import is_eligible
from data.models import ErrorType
from experiments.experiment_runner import (
    CleanSample,
    ExperimentRunner,
    run_experiment,
    samples_from_lines,
    word_repair_counts,
    word_repair_rate,
)
from experiments.synthetic_corpus import FUNCTION_NAMES, NAME_POOL, build_functions
from grammar.grammar_core import DEFAULT_KEYWORDS
from metrics.error_rates import classify_errors
from noisy_channel.injection_log import InjectionLog
from pipeline.similarity import similarity
from utils.errors import UndefinedRateError

SILENT = NoiseConfig(p_space=0.0, p_symbol=0.0, p_word=0.0)


def corpus(n: int = 30, seed: int = 0):
    return [CleanSample(f"f{i}", s.source_lines) for i, s in enumerate(build_functions(n, seed))]


class TestSyntheticCorpus(unittest.TestCase):
    def test_name_pool_is_mutually_dissimilar(self):
        names = NAME_POOL + FUNCTION_NAMES + ("self",)
        for a, b in itertools.combinations(names, 2):
            self.assertLess(similarity(a, b), 0.7, (a, b))
        for name in names:
            self.assertNotIn(name, DEFAULT_KEYWORDS)

    def test_functions_are_eligible_and_deterministic(self):
        functions = build_functions(50, seed=4)
        self.assertTrue(all(is_eligible(f) for f in functions))
        self.assertEqual(functions, build_functions(50, seed=4))
        self.assertNotEqual(functions, build_functions(50, seed=5))


class TestExperimentRunner(unittest.TestCase):
    def test_zero_noise_gives_zero_error(self):
        result = run_experiment(corpus(10), SILENT)
        rates = result.mean_rates()
        self.assertEqual(rates["noisy_wer"], 0.0)
        self.assertEqual(rates["corrected_wer"], 0.0)
        self.assertEqual(rates["corrected_cer"], 0.0)
        self.assertEqual(result.injected.total, 0)
        self.assertTrue(all(v is None for v in result.fix_rates.values()))

    def test_empty_input(self):
        with self.assertRaises(UndefinedRateError):
            run_experiment([])

    def test_summaries_follow_sample_order(self):
        result = run_experiment(corpus(4), NoiseConfig(seed=2))
        self.assertEqual([s.sample_id for s in result.corrected_summary], ["f0", "f1", "f2", "f3"])
        self.assertEqual(len(result.noisy_results), 4)

    def test_same_seed_same_result(self):
        first = run_experiment(corpus(6), NoiseConfig(seed=8))
        second = run_experiment(corpus(6), NoiseConfig(seed=8))
        self.assertEqual([r.noisy_lines for r in first.runs], [r.noisy_lines for r in second.runs])
        self.assertEqual(first.mean_rates(), second.mean_rates())

    def test_space_errors_all_removed(self):
        config = NoiseConfig(seed=1, p_space=1.0, p_symbol=0.0, p_word=0.0)
        result = run_experiment(corpus(30, seed=1), config)
        self.assertGreater(result.injected.space_errors, 0)
        for run in result.runs:
            for clean, corrected in zip(run.sample.lines, run.corrected_lines):
                self.assertEqual(classify_errors(clean, corrected).space_errors, 0, (clean, corrected))
        self.assertEqual(result.fix_rates[ErrorType.SPACE], 1.0)

    def test_word_errors_mostly_repaired(self):
        config = NoiseConfig(seed=6, p_space=0.0, p_symbol=0.0, p_word=0.10)
        result = ExperimentRunner(config, untouched_lines={0}).run(corpus(30, seed=6))
        injected = residual = 0
        for run in result.runs:
            n, left = word_repair_counts(run.sample.lines, run.corrected_lines, run.log)
            injected += n
            residual += left
        self.assertGreater(injected, 0)
        self.assertGreaterEqual((injected - residual) / injected, 0.7)

    def test_default_noise_improves_every_run(self):
        samples = corpus(30, seed=100)
        for seed in range(20):
            with self.subTest(seed=seed):
                rates = run_experiment(samples, NoiseConfig(seed=seed)).mean_rates()
                self.assertLess(rates["corrected_wer"], rates["noisy_wer"])
                self.assertLess(rates["corrected_cer"], rates["noisy_cer"])

    def test_shared_lexicon_mode(self):
        config = CorrectionConfig(reset_lexicon_per_sample=False)
        result = ExperimentRunner(SILENT, config).run(corpus(5))
        self.assertEqual(result.mean_rates()["corrected_wer"], 0.0)


class TestWordRepairRate(unittest.TestCase):
    def test_no_word_errors(self):
        with self.assertRaises(UndefinedRateError):
            word_repair_rate(["x = 1"], ["x = 1"], InjectionLog())

    def test_samples_from_lines(self):
        samples = samples_from_lines([("a", ["x = 1"]), ("b", ["y = 2"])], writer_id="w1")
        self.assertEqual(samples[1], CleanSample("b", ("y = 2",), "w1"))


if __name__ == "__main__":
    unittest.main()
