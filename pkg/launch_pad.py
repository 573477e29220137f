#!/usr/bin/env python
"""
launch_pad.py
Description:
  Command-line front door for codehand. This file:
    - Loads configuration (codehand_config.json < --config file < flags) and sets up logging.
    - Wires the ink, pipeline, noisy channel, metrics, corpus and experiment modules
      into the commands segment, inject, correct, evaluate, sample-corpus and experiment.
    - Writes a manifest.json next to every command's outputs; `replay` re-runs it.
    - Journals each run in the output directory's operations log.

Usage:
  python launch_pad.py inject clean.txt --seed 7 --out run1
  python launch_pad.py correct run1/noisy.txt --out run1
  python launch_pad.py evaluate clean.txt run1/corrected.txt
  python launch_pad.py replay run1/manifest.json --out run1-again

Exit codes: 0 success, 2 input-format error, 3 configuration error,
4 empty input or undefined rate.
"""

import functools
import json
import logging
import os
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import click
from colorama import Fore, Style

from config.config_constants import (
    DEFAULT_OUT_DIR,
    MANIFEST_FILENAME,
    NO_COLOR_ENV,
    OPERATIONS_LOG_FILENAME,
    TOOL_NAME,
    TOOL_VERSION,
)
from config.config_models import CodehandSettings, RunManifest
from config.logging_config import setup_logging
from config.unified_config_manager import UnifiedConfigManager
from corpus.corpus_sampler import INDEX_FILENAME, collect_functions, sample_functions, write_samples
from corpus.function_extractor import filter_eligible
from experiments.experiment_runner import CleanSample, ExperimentRunner
from grammar.class_registry import DEFAULT_REGISTRY, ClassRegistry, load_class_registry
from grammar.grammar_core import KeywordSet
from ink.ink_reader import load_ink_file
from ink.line_segmenter import segment_lines
from metrics.error_rates import aggregate_report, evaluate_sample
from metrics.report_writer import format_report, format_report_json
from noisy_channel.confusion_table import ConfusionTable, default_confusion_table, load_confusion_table
from noisy_channel.error_injector import ErrorInjector
from noisy_channel.injection_log import write_injection_log
from pipeline.adaptive_lexicon import AdaptiveLexicon
from pipeline.correction_pipeline import correct_file_lines
from utils.errors import CodehandError, InputFormatError
from utils.file_ops import atomic_write_text, read_lines, write_lines
from utils.operations_manager import OperationsLogger

logger = logging.getLogger("CodehandCLI")

SAMPLE_SUFFIX = ".txt"


###############################################################################
# Presentation
###############################################################################

def _color(text: str, color: str) -> str:
    if os.getenv(NO_COLOR_ENV):
        return text
    return f"{color}{text}{Style.RESET_ALL}"


def _rate_line(label: str, value: float) -> str:
    return f"{label}: {_color(f'{value:.2f}%', Fore.CYAN)}"


###############################################################################
# Shared helpers
###############################################################################

def _read_sample(path: Path) -> List[str]:
    try:
        return read_lines(path)
    except UnicodeDecodeError as e:
        raise InputFormatError(f"{path}: not valid UTF-8 ({e})") from e
    except OSError as e:
        raise InputFormatError(f"cannot read {path}: {e}") from e


def _sample_files(directory: Path) -> List[Path]:
    return sorted(p for p in directory.iterdir()
                  if p.is_file() and p.suffix == SAMPLE_SUFFIX and p.name != INDEX_FILENAME)


def _registry(settings: CodehandSettings) -> ClassRegistry:
    path = settings.grammar_config.class_registry_path
    return load_class_registry(path) if path else DEFAULT_REGISTRY


def _keywords(registry: ClassRegistry) -> KeywordSet:
    return KeywordSet.for_registry(registry)


def _table(settings: CodehandSettings) -> ConfusionTable:
    path = settings.noise_config.confusion_table_path
    return load_confusion_table(path) if path else default_confusion_table()


def _write_manifest(command: str, settings: CodehandSettings, arguments: Dict[str, Any],
                    inputs: Sequence[str], out_dir: Path, seed: Optional[int]) -> Path:
    manifest = RunManifest(
        command=command,
        arguments=arguments,
        config=settings.model_dump(mode="json"),
        inputs=list(inputs),
        out_dir=str(out_dir),
        seed=seed,
        tool_version=TOOL_VERSION,
    )
    payload = json.dumps(manifest.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"
    return atomic_write_text(out_dir / MANIFEST_FILENAME, payload)


###############################################################################
# Command bodies (shared by the click commands and `replay`)
###############################################################################

def run_segment(settings: CodehandSettings, out_dir: Path, ink_file: str, as_json: bool = False) -> List[str]:
    sample = load_ink_file(ink_file)
    groups = segment_lines(sample, settings.segment_config.line_gap_ratio)
    if as_json:
        payload = {
            "sample_id": sample.sample_id,
            "writer_id": sample.writer_id,
            "line_gap_ratio": settings.segment_config.line_gap_ratio,
            "lines": [
                {"stroke_indices": list(g.stroke_indices), "y_min": g.vertical_band[0], "y_max": g.vertical_band[1]}
                for g in groups
            ],
        }
        atomic_write_text(out_dir / "segments.json", json.dumps(payload, indent=2) + "\n")
    else:
        rows = ["# line\tstrokes\ty_min\ty_max"]
        rows += [f"{i}\t{','.join(map(str, g.stroke_indices))}\t{g.vertical_band[0]:.2f}\t{g.vertical_band[1]:.2f}"
                 for i, g in enumerate(groups)]
        write_lines(out_dir / "segments.txt", rows)
    summary = [f"{sample.sample_id}: {_color(str(len(groups)), Fore.GREEN)} lines"]
    summary += [f"  line {i}: strokes {','.join(map(str, g.stroke_indices))}" for i, g in enumerate(groups)]
    return summary


def run_inject(settings: CodehandSettings, out_dir: Path, clean_file: str, as_json: bool = False) -> List[str]:
    clean = _read_sample(Path(clean_file))
    injector = ErrorInjector(settings.noise_config, _table(settings))
    noisy, log = injector.inject(clean)
    write_lines(out_dir / "noisy.txt", noisy)
    write_injection_log(log, out_dir / "injection_log.tsv")
    counts = log.counts()
    return [
        f"{len(log)} errors injected into {len(clean)} lines (seed {settings.noise_config.seed})",
        f"  word {counts.word_errors}, symbol {counts.symbol_errors}, space {counts.space_errors}",
    ]


def run_correct(settings: CodehandSettings, out_dir: Path, noisy_file: str, as_json: bool = False) -> List[str]:
    registry = _registry(settings)
    lines = _read_sample(Path(noisy_file))
    lexicon = AdaptiveLexicon(_keywords(registry))
    corrected, diagnostics = correct_file_lines(lines, settings.correction_config, lexicon, registry)
    write_lines(out_dir / "corrected.txt", corrected)
    rows = ["# line\tunbalanced_brackets\tflagged_tokens"]
    rows += [f"{i}\t{d.unbalanced_brackets}\t{','.join(map(str, d.flagged_tokens))}"
             for i, d in enumerate(diagnostics)]
    write_lines(out_dir / "diagnostics.txt", rows)
    changed = sum(1 for a, b in zip(lines, corrected) if a != b)
    unbalanced = sum(1 for d in diagnostics if d.unbalanced_brackets)
    summary = [f"{changed} of {len(lines)} lines changed; lexicon holds {len(lexicon)} names"]
    if unbalanced:
        summary.append(_color(f"{unbalanced} lines with unbalanced brackets", Fore.YELLOW))
    return summary


def run_evaluate(settings: CodehandSettings, out_dir: Path, ref: str, hyp: str,
                 writer: str = "unknown", as_json: bool = False) -> List[str]:
    ref_path, hyp_path = Path(ref), Path(hyp)
    if ref_path.is_dir() != hyp_path.is_dir():
        raise InputFormatError("reference and hypothesis must both be files or both be directories")
    if ref_path.is_dir():
        pairs = []
        for ref_file in _sample_files(ref_path):
            hyp_file = hyp_path / ref_file.name
            if not hyp_file.is_file():
                raise InputFormatError(f"no hypothesis file for {ref_file.name} in {hyp_path}")
            pairs.append((ref_file, hyp_file))
    else:
        pairs = [(ref_path, hyp_path)]

    per_line = settings.metrics_config.per_line
    results = [
        evaluate_sample(r.stem, writer, _read_sample(r), _read_sample(h), per_line)
        for r, h in pairs
    ]
    summaries = aggregate_report(results)
    if as_json:
        atomic_write_text(out_dir / "report.json", format_report_json(results, summaries))
    else:
        atomic_write_text(out_dir / "report.csv", format_report(results, summaries))

    summary = []
    for result in results:
        b = result.breakdown
        summary.append(f"{result.sample_id}: {_rate_line('WER', result.wer)}, {_rate_line('CER', result.cer)} "
                       f"(word {b.word_errors}, symbol {b.symbol_errors}, space {b.space_errors})")
    return summary


def run_sample_corpus(settings: CodehandSettings, out_dir: Path, src_dir: str, n: int,
                      seed: int = 0, as_json: bool = False) -> List[str]:
    corpus = settings.corpus_config
    functions = collect_functions(src_dir, corpus.extensions, show_progress=False)
    eligible = filter_eligible(functions, corpus)
    chosen = sample_functions(eligible, n, seed)
    write_samples(chosen, out_dir)
    return [f"{len(functions)} functions, {len(eligible)} eligible, {len(chosen)} sampled (seed {seed})"]


def run_experiment_command(settings: CodehandSettings, out_dir: Path, clean_dir: str,
                           writer: str = "synthetic", as_json: bool = False) -> List[str]:
    files = _sample_files(Path(clean_dir))
    if not files:
        raise InputFormatError(f"no {SAMPLE_SUFFIX} samples in {clean_dir}")
    samples = [CleanSample(f.stem, tuple(_read_sample(f)), writer) for f in files]
    runner = ExperimentRunner(settings.noise_config, settings.correction_config, _table(settings),
                              _registry(settings), settings.metrics_config.per_line)
    result = runner.run(samples, show_progress=True)

    for path, run in zip(files, result.runs):
        write_lines(out_dir / "noisy" / path.name, run.noisy_lines)
        write_lines(out_dir / "corrected" / path.name, run.corrected_lines)
        write_injection_log(run.log, out_dir / "logs" / f"{path.stem}.tsv")

    if as_json:
        payload = {
            "noisy": json.loads(format_report_json(result.noisy_results, result.noisy_summary)),
            "corrected": json.loads(format_report_json(result.corrected_results, result.corrected_summary)),
            "fix_rates": {t.value: (None if v is None else round(v, 4)) for t, v in result.fix_rates.items()},
        }
        atomic_write_text(out_dir / "report.json", json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        atomic_write_text(out_dir / "noisy_report.csv", format_report(result.noisy_results, result.noisy_summary))
        atomic_write_text(out_dir / "corrected_report.csv",
                          format_report(result.corrected_results, result.corrected_summary))
        rows = ["# error_type\tfix_rate"]
        rows += [f"{t.value}\t{'' if v is None else f'{v:.4f}'}" for t, v in result.fix_rates.items()]
        write_lines(out_dir / "fix_rates.txt", rows)

    means = result.mean_rates()
    summary = [
        f"{len(samples)} samples, seed {settings.noise_config.seed}",
        f"  noisy     {_rate_line('WER', means['noisy_wer'])}, {_rate_line('CER', means['noisy_cer'])}",
        f"  corrected {_rate_line('WER', means['corrected_wer'])}, {_rate_line('CER', means['corrected_cer'])}",
    ]
    for error_type, rate in result.fix_rates.items():
        shown = "n/a" if rate is None else f"{rate * 100:.1f}%"
        summary.append(f"  {error_type.value} errors fixed: {_color(shown, Fore.GREEN)}")
    return summary


RUNNERS: Dict[str, Callable[..., List[str]]] = {
    "segment": run_segment,
    "inject": run_inject,
    "correct": run_correct,
    "evaluate": run_evaluate,
    "sample-corpus": run_sample_corpus,
    "experiment": run_experiment_command,
}


def execute(command: str, settings: CodehandSettings, out_dir: Path, arguments: Dict[str, Any],
            inputs: Sequence[str], seed: Optional[int] = None, replayed_from: Optional[str] = None) -> List[str]:
    """Runs one command body, journals it and writes its manifest."""
    out_dir.mkdir(parents=True, exist_ok=True)
    journal = OperationsLogger(out_dir / OPERATIONS_LOG_FILENAME)
    try:
        if replayed_from:
            journal.log(f"{command} replayed from {replayed_from}", source=TOOL_NAME,
                        operation_type="Manifest Replayed")
        journal.log(f"{command} started", source=TOOL_NAME, operation_type="Command Started")
        try:
            summary = RUNNERS[command](settings, out_dir, **arguments)
        except CodehandError as e:
            journal.log(f"{command} failed: {e}", source=TOOL_NAME, operation_type="Command Failed")
            raise
        _write_manifest(command, settings, arguments, inputs, out_dir, seed)
        journal.log(f"{command} completed", source=TOOL_NAME, operation_type="Command Completed")
    finally:
        journal.close()
    logger.info("%s finished; outputs in %s", command, out_dir)
    return summary


###############################################################################
# click surface
###############################################################################

class _State:
    def __init__(self, verbose: bool):
        self.verbose = verbose

    def settings(self, config_path: Optional[str], overrides: Dict[str, Any]) -> CodehandSettings:
        settings = UnifiedConfigManager().load_settings(config_path, overrides)
        setup_logging(settings, "DEBUG" if self.verbose else None)
        return settings


def _common_options(func):
    func = click.option("--json", "as_json", is_flag=True, help="Write JSON instead of text reports.")(func)
    func = click.option("--config", "config_path", type=click.Path(dir_okay=False),
                        help="JSON or key=value configuration file.")(func)
    func = click.option("--out", "out_dir", type=click.Path(file_okay=False), default=str(DEFAULT_OUT_DIR),
                        show_default=True, help="Output directory.")(func)
    return func


def _finish(summary: List[str]):
    for line in summary:
        click.echo(line)


def _guard(func):
    """Maps codehand errors to their exit codes with the message on stderr."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return func(*args, **kwargs)
        except CodehandError as e:
            logger.error("%s", e)
            click.echo(f"error: {e}", err=True)
            ctx.exit(e.exit_code)
    return wrapper


@click.group(name=TOOL_NAME)
@click.version_option(TOOL_VERSION, prog_name=TOOL_NAME)
@click.option("--verbose", "-v", is_flag=True, help="Log at DEBUG level.")
@click.pass_context
def cli(ctx, verbose):
    """Grammar-aware correction of handwritten Python recognition output."""
    ctx.obj = _State(verbose)


@cli.command()
@click.argument("ink_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--line-gap-ratio", type=float, default=None, help="Line break threshold, x median stroke height.")
@_common_options
@click.pass_obj
@_guard
def segment(state, ink_file, line_gap_ratio, out_dir, config_path, as_json):
    """Split an ink file into writing lines."""
    settings = state.settings(config_path, {"segment_config": {"line_gap_ratio": line_gap_ratio}})
    arguments = {"ink_file": ink_file, "as_json": as_json}
    _finish(execute("segment", settings, Path(out_dir), arguments, [ink_file]))


@cli.command()
@click.argument("clean_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", type=click.IntRange(0, 2 ** 64 - 1), default=None, help="Random stream seed.")
@click.option("--p-space", type=click.FloatRange(0, 1), default=None)
@click.option("--p-symbol", type=click.FloatRange(0, 1), default=None)
@click.option("--p-word", type=click.FloatRange(0, 1), default=None)
@click.option("--table", "table_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Confusion table file (source<TAB>target).")
@_common_options
@click.pass_obj
@_guard
def inject(state, clean_file, seed, p_space, p_symbol, p_word, table_path, out_dir, config_path, as_json):
    """Corrupt clean source lines with seeded recognition errors."""
    settings = state.settings(config_path, {"noise_config": {
        "seed": seed, "p_space": p_space, "p_symbol": p_symbol, "p_word": p_word,
        "confusion_table_path": table_path,
    }})
    arguments = {"clean_file": clean_file, "as_json": as_json}
    _finish(execute("inject", settings, Path(out_dir), arguments, [clean_file], settings.noise_config.seed))


@cli.command()
@click.argument("noisy_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--threshold", type=float, default=None, help="Lexicon similarity threshold in (0, 1].")
@click.option("--fuzzy-keywords/--no-fuzzy-keywords", default=None, help="Repair misread leading keywords.")
@click.option("--registry", "registry_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Statement class registry file.")
@_common_options
@click.pass_obj
@_guard
def correct(state, noisy_file, threshold, fuzzy_keywords, registry_path, out_dir, config_path, as_json):
    """Correct recognized source lines, one sample per file."""
    settings = state.settings(config_path, {
        "correction_config": {"similarity_threshold": threshold, "fuzzy_keyword_repair": fuzzy_keywords},
        "grammar_config": {"class_registry_path": registry_path},
    })
    arguments = {"noisy_file": noisy_file, "as_json": as_json}
    _finish(execute("correct", settings, Path(out_dir), arguments, [noisy_file]))


@cli.command()
@click.argument("ref", type=click.Path(exists=True))
@click.argument("hyp", type=click.Path(exists=True))
@click.option("--writer", default="unknown", show_default=True, help="Writer id recorded in the report.")
@click.option("--per-line/--pooled", default=None, help="Average per-line rates instead of pooling edits.")
@_common_options
@click.pass_obj
@_guard
def evaluate(state, ref, hyp, writer, per_line, out_dir, config_path, as_json):
    """Score hypothesis text against a reference (files or directories)."""
    settings = state.settings(config_path, {"metrics_config": {"per_line": per_line}})
    arguments = {"ref": ref, "hyp": hyp, "writer": writer, "as_json": as_json}
    _finish(execute("evaluate", settings, Path(out_dir), arguments, [ref, hyp]))


@cli.command(name="sample-corpus")
@click.argument("src_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--n", "n", type=click.IntRange(0), required=True, help="Number of functions to draw.")
@click.option("--seed", type=click.IntRange(0, 2 ** 64 - 1), default=0, show_default=True)
@_common_options
@click.pass_obj
@_guard
def sample_corpus(state, src_dir, n, seed, out_dir, config_path, as_json):
    """Harvest eligible functions from a source tree and draw a sample."""
    settings = state.settings(config_path, {})
    arguments = {"src_dir": src_dir, "n": n, "seed": seed, "as_json": as_json}
    _finish(execute("sample-corpus", settings, Path(out_dir), arguments, [src_dir], seed))


@cli.command()
@click.argument("clean_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--seed", type=click.IntRange(0, 2 ** 64 - 1), default=None)
@click.option("--p-space", type=click.FloatRange(0, 1), default=None)
@click.option("--p-symbol", type=click.FloatRange(0, 1), default=None)
@click.option("--p-word", type=click.FloatRange(0, 1), default=None)
@click.option("--threshold", type=float, default=None)
@click.option("--writer", default="synthetic", show_default=True)
@_common_options
@click.pass_obj
@_guard
def experiment(state, clean_dir, seed, p_space, p_symbol, p_word, threshold, writer, out_dir, config_path, as_json):
    """Inject, correct and evaluate every sample in a directory."""
    settings = state.settings(config_path, {
        "noise_config": {"seed": seed, "p_space": p_space, "p_symbol": p_symbol, "p_word": p_word},
        "correction_config": {"similarity_threshold": threshold},
    })
    arguments = {"clean_dir": clean_dir, "writer": writer, "as_json": as_json}
    _finish(execute("experiment", settings, Path(out_dir), arguments, [clean_dir], settings.noise_config.seed))


@cli.command()
@click.argument("manifest_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None,
              help="Output directory (defaults to the one recorded in the manifest).")
@click.pass_obj
@_guard
def replay(state, manifest_file, out_dir):
    """Re-run a command from its manifest.json."""
    try:
        manifest = RunManifest.model_validate_json(Path(manifest_file).read_text(encoding="utf-8"))
    except ValueError as e:
        raise InputFormatError(f"{manifest_file}: not a run manifest ({e})") from e
    if manifest.command not in RUNNERS:
        raise InputFormatError(f"{manifest_file}: unknown command {manifest.command!r}")
    if manifest.tool_version != TOOL_VERSION:
        logger.warning("Manifest written by %s %s, replaying with %s", TOOL_NAME, manifest.tool_version, TOOL_VERSION)
    settings = UnifiedConfigManager.validate_config(manifest.config)
    setup_logging(settings, "DEBUG" if state.verbose else None)
    target = Path(out_dir) if out_dir else Path(manifest.out_dir)
    _finish(execute(manifest.command, settings, target, dict(manifest.arguments), manifest.inputs, manifest.seed,
                    replayed_from=str(manifest_file)))


if __name__ == "__main__":
    cli(prog_name=TOOL_NAME)
