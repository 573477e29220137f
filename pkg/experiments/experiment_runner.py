#!/usr/bin/env python
"""
experiment_runner.py

Runs the inject -> correct -> evaluate loop over a set of clean samples:
each sample is corrupted by the noisy channel, corrected by the pipeline,
and both versions are scored against the clean text. The result carries
per-sample WER/CER for the noisy and corrected text, group means, and the
share of each error type the pipeline removed.
"""

import logging
from dataclasses import dataclass, field
from typing import Collection, Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from config.config_models import CorrectionConfig, NoiseConfig
from data.models import ErrorBreakdown, ErrorType, GroupSummary, InjectionRecord, SampleResult
from grammar.class_registry import DEFAULT_REGISTRY, ClassRegistry
from grammar.grammar_core import DEFAULT_KEYWORDS, KeywordSet
from metrics.error_rates import aggregate_report, classify_errors, evaluate_sample, fix_rates
from noisy_channel.confusion_table import ConfusionTable
from noisy_channel.error_injector import ErrorInjector
from noisy_channel.injection_log import InjectionLog
from pipeline.adaptive_lexicon import AdaptiveLexicon
from pipeline.correction_pipeline import correct_file_lines
from utils.errors import UndefinedRateError

logger = logging.getLogger("ExperimentLogger")


@dataclass(frozen=True)
class CleanSample:
    sample_id: str
    lines: Tuple[str, ...]
    writer_id: str = "synthetic"


@dataclass(frozen=True)
class SampleRun:
    sample: CleanSample
    noisy_lines: Tuple[str, ...]
    corrected_lines: Tuple[str, ...]
    log: InjectionLog
    noisy_result: SampleResult
    corrected_result: SampleResult


@dataclass(frozen=True)
class ExperimentResult:
    runs: Tuple[SampleRun, ...]
    noisy_summary: Tuple[GroupSummary, ...]
    corrected_summary: Tuple[GroupSummary, ...]
    fix_rates: Dict[ErrorType, Optional[float]] = field(default_factory=dict)

    @property
    def noisy_results(self) -> List[SampleResult]:
        return [r.noisy_result for r in self.runs]

    @property
    def corrected_results(self) -> List[SampleResult]:
        return [r.corrected_result for r in self.runs]

    @property
    def injected(self) -> ErrorBreakdown:
        total = ErrorBreakdown()
        for run in self.runs:
            total = total + run.log.counts()
        return total

    def mean_rates(self) -> Dict[str, float]:
        """Pooled means over all samples."""
        n = len(self.runs)
        return {
            "noisy_wer": sum(r.noisy_result.wer for r in self.runs) / n,
            "noisy_cer": sum(r.noisy_result.cer for r in self.runs) / n,
            "corrected_wer": sum(r.corrected_result.wer for r in self.runs) / n,
            "corrected_cer": sum(r.corrected_result.cer for r in self.runs) / n,
        }


def _breakdown_total(results: Sequence[SampleResult]) -> ErrorBreakdown:
    total = ErrorBreakdown()
    for result in results:
        total = total + result.breakdown
    return total


class ExperimentRunner:
    def __init__(self,
                 noise_config: NoiseConfig = NoiseConfig(),
                 correction_config: CorrectionConfig = CorrectionConfig(),
                 table: Optional[ConfusionTable] = None,
                 registry: ClassRegistry = DEFAULT_REGISTRY,
                 per_line: bool = False,
                 untouched_lines: Collection[int] = ()):
        """
        :param noise_config: channel probabilities and the seed for the whole run.
        :param correction_config: pipeline settings.
        :param table: confusion table; the built-in one when omitted.
        :param registry: statement classes for classification and parsing.
        :param per_line: average per-line rates instead of pooling edits.
        :param untouched_lines: line numbers (per sample) the channel leaves clean.
        """
        self.noise_config = noise_config
        self.correction_config = correction_config
        self.registry = registry
        self.keywords: KeywordSet = (DEFAULT_KEYWORDS if registry is DEFAULT_REGISTRY
                                     else KeywordSet.for_registry(registry))
        self.injector = ErrorInjector(noise_config, table, self.keywords)
        self.per_line = per_line
        self.untouched_lines = frozenset(untouched_lines)

    def _run_sample(self, sample: CleanSample, lexicon: AdaptiveLexicon) -> SampleRun:
        noisy, log = self.injector.inject(sample.lines, self.untouched_lines)
        corrected, _ = correct_file_lines(noisy, self.correction_config, lexicon, self.registry)
        noisy_result = evaluate_sample(sample.sample_id, sample.writer_id, sample.lines, noisy, self.per_line)
        corrected_result = evaluate_sample(sample.sample_id, sample.writer_id, sample.lines, corrected, self.per_line)
        logger.debug("%s: WER %.2f -> %.2f, CER %.2f -> %.2f", sample.sample_id,
                     noisy_result.wer, corrected_result.wer, noisy_result.cer, corrected_result.cer)
        return SampleRun(sample, tuple(noisy), tuple(corrected), log, noisy_result, corrected_result)

    def run(self, samples: Sequence[CleanSample], show_progress: bool = False) -> ExperimentResult:
        if not samples:
            raise UndefinedRateError("an experiment needs at least one sample")
        shared = None if self.correction_config.reset_lexicon_per_sample else AdaptiveLexicon(self.keywords)

        runs = []
        for sample in tqdm(samples, desc="Experiment", unit="sample", disable=not show_progress):
            lexicon = shared if shared is not None else AdaptiveLexicon(self.keywords)
            runs.append(self._run_sample(sample, lexicon))

        noisy_results = [r.noisy_result for r in runs]
        corrected_results = [r.corrected_result for r in runs]
        result = ExperimentResult(
            runs=tuple(runs),
            noisy_summary=tuple(aggregate_report(noisy_results)),
            corrected_summary=tuple(aggregate_report(corrected_results)),
            fix_rates=fix_rates(_breakdown_total(noisy_results), _breakdown_total(corrected_results)),
        )
        means = result.mean_rates()
        logger.info("Experiment over %d samples (seed %d): WER %.2f -> %.2f, CER %.2f -> %.2f",
                    len(runs), self.noise_config.seed, means["noisy_wer"], means["corrected_wer"],
                    means["noisy_cer"], means["corrected_cer"])
        return result


def run_experiment(clean_samples: Sequence[CleanSample],
                   noise_config: NoiseConfig = NoiseConfig(),
                   correction_config: CorrectionConfig = CorrectionConfig(),
                   table: Optional[ConfusionTable] = None,
                   **kwargs) -> ExperimentResult:
    return ExperimentRunner(noise_config, correction_config, table, **kwargs).run(clean_samples)


def word_repair_counts(clean_lines: Sequence[str],
                       corrected_lines: Sequence[str],
                       log: InjectionLog) -> Tuple[int, int]:
    """
    (injected, residual) word errors. Residual errors are counted per
    corrupted line and capped at what was injected there, so damage elsewhere
    does not count against the repair.
    """
    per_line: Dict[int, List[InjectionRecord]] = {}
    for record in log:
        if record.error_type == ErrorType.WORD:
            per_line.setdefault(record.line_index, []).append(record)
    injected = sum(len(v) for v in per_line.values())
    residual = 0
    for line_index, records in per_line.items():
        remaining = classify_errors(clean_lines[line_index], corrected_lines[line_index]).word_errors
        residual += min(remaining, len(records))
    return injected, residual


def word_repair_rate(clean_lines: Sequence[str],
                     corrected_lines: Sequence[str],
                     log: InjectionLog) -> float:
    """Share of injected word errors no longer present after correction."""
    injected, residual = word_repair_counts(clean_lines, corrected_lines, log)
    if injected == 0:
        raise UndefinedRateError("no word errors were injected")
    return (injected - residual) / injected


def samples_from_lines(named_lines: Sequence[Tuple[str, Sequence[str]]], writer_id: str = "synthetic") -> List[CleanSample]:
    return [CleanSample(sample_id, tuple(lines), writer_id) for sample_id, lines in named_lines]
