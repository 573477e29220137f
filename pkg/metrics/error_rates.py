#!/usr/bin/env python
"""
error_rates.py
Description:
    Word and character error rates, (D + I + S) / L x 100, and the
    word / symbol / space taxonomy of recognition errors.

    For the rates, words are maximal runs of non-whitespace and characters
    include spaces. The taxonomy groups word errors by identifier runs.
"""

import logging
from collections import OrderedDict
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from data.models import EditOpType, ErrorBreakdown, ErrorType, GroupSummary, SampleResult
from metrics.alignment import align
from pipeline.similarity import levenshtein
from utils.errors import UndefinedRateError

logger = logging.getLogger("MetricsLogger")


def _rate(edits: int, length: int, unit: str) -> float:
    if length == 0:
        raise UndefinedRateError(f"{unit} error rate is undefined for an empty reference")
    return edits / length * 100.0


def word_edits(ref: str, hyp: str) -> int:
    return levenshtein(ref.split(), hyp.split())


def char_edits(ref: str, hyp: str) -> int:
    return levenshtein(ref, hyp)


def wer(ref: str, hyp: str) -> float:
    return _rate(word_edits(ref, hyp), len(ref.split()), "word")


def cer(ref: str, hyp: str) -> float:
    return _rate(char_edits(ref, hyp), len(ref), "character")


###############################################################################
# Taxonomy
###############################################################################

def _is_word_char(ch: str) -> bool:
    return ch.isalnum() or ch == "_"


def _word_index_map(ref: str) -> List[Optional[int]]:
    """Identifier-run number of every reference character; None outside identifier runs."""
    index_map: List[Optional[int]] = []
    word = -1
    in_word = False
    for ch in ref:
        if not _is_word_char(ch):
            index_map.append(None)
            in_word = False
        else:
            if not in_word:
                word += 1
                in_word = True
            index_map.append(word)
    return index_map


def _insert_owner(index_map: List[Optional[int]], at: int) -> int:
    if at > 0 and index_map[at - 1] is not None:
        return index_map[at - 1]
    if at < len(index_map) and index_map[at] is not None:
        return index_map[at]
    for k in range(at - 1, -1, -1):
        if index_map[k] is not None:
            return index_map[k]
    return -1


def _is_symbol(ch: Optional[str]) -> bool:
    return ch is not None and not ch.isalnum() and not ch.isspace()


def _is_space(ch: Optional[str]) -> bool:
    return ch is not None and ch.isspace()


def classify_errors(ref: str, hyp: str) -> ErrorBreakdown:
    """
    Character-level edits are labelled space errors when they involve a
    whitespace character, symbol errors when they involve punctuation, and the
    rest are word errors counted once per affected identifier run
    ([A-Za-z0-9_]+), so f(a, b) holds three words.
    """
    alignment = align(list(ref), list(hyp))
    index_map = _word_index_map(ref)
    spaces = symbols = 0
    words_hit = set()
    for op in alignment.ops:
        if op.op == EditOpType.MATCH:
            continue
        if _is_space(op.ref_unit) or _is_space(op.hyp_unit):
            spaces += 1
        elif _is_symbol(op.ref_unit) or _is_symbol(op.hyp_unit):
            symbols += 1
        elif op.op == EditOpType.INSERT:
            words_hit.add(_insert_owner(index_map, op.ref_index))
        else:
            words_hit.add(index_map[op.ref_index])
    return ErrorBreakdown(word_errors=len(words_hit), symbol_errors=symbols, space_errors=spaces)


###############################################################################
# Sample-level evaluation
###############################################################################

def evaluate_sample(sample_id: str,
                    writer_id: str,
                    ref_lines: Sequence[str],
                    hyp_lines: Sequence[str],
                    per_line: bool = False) -> SampleResult:
    """
    Scores one sample. Line-aligned edits are pooled (sum of edits over sum of
    reference lengths); per_line averages the per-line rates instead, skipping
    lines with an empty reference. When the line counts differ the joined
    texts are aligned as a whole.
    """
    if len(ref_lines) != len(hyp_lines):
        logger.warning("%s: %d reference vs %d hypothesis lines; aligning whole text",
                       sample_id, len(ref_lines), len(hyp_lines))
        pairs = [("\n".join(ref_lines), "\n".join(hyp_lines))]
    else:
        pairs = list(zip(ref_lines, hyp_lines))

    breakdown = ErrorBreakdown()
    for ref, hyp in pairs:
        if ref != hyp:
            breakdown = breakdown + classify_errors(ref, hyp)

    if per_line:
        scored = [(r, h) for r, h in pairs if r.split()]
        if not scored:
            raise UndefinedRateError(f"sample {sample_id!r} has no reference text")
        sample_wer = float(np.mean([wer(r, h) for r, h in scored]))
        sample_cer = float(np.mean([cer(r, h) for r, h in scored]))
    else:
        sample_wer = _rate(sum(word_edits(r, h) for r, h in pairs),
                           sum(len(r.split()) for r, _ in pairs), "word")
        sample_cer = _rate(sum(char_edits(r, h) for r, h in pairs),
                           sum(len(r) for r, _ in pairs), "character")
    return SampleResult(sample_id, writer_id, sample_wer, sample_cer, breakdown)


def aggregate_report(results: Iterable[SampleResult]) -> List[GroupSummary]:
    """Arithmetic means per sample id, in order of first appearance."""
    groups: "OrderedDict[str, List[SampleResult]]" = OrderedDict()
    for result in results:
        groups.setdefault(result.sample_id, []).append(result)
    if not groups:
        raise UndefinedRateError("cannot aggregate an empty set of results")

    summaries = []
    for sample_id, members in groups.items():
        summaries.append(GroupSummary(
            sample_id=sample_id,
            count=len(members),
            mean_wer=float(np.mean([m.wer for m in members])),
            mean_cer=float(np.mean([m.cer for m in members])),
            mean_word_errors=float(np.mean([m.breakdown.word_errors for m in members])),
            mean_symbol_errors=float(np.mean([m.breakdown.symbol_errors for m in members])),
            mean_space_errors=float(np.mean([m.breakdown.space_errors for m in members])),
        ))
    return summaries


def fix_rates(noisy: ErrorBreakdown, corrected: ErrorBreakdown) -> Dict[ErrorType, Optional[float]]:
    """Share of each error type removed by correction; None where there was nothing to fix."""
    rates: Dict[ErrorType, Optional[float]] = {}
    for error_type in ErrorType:
        before = noisy.get(error_type)
        rates[error_type] = None if before == 0 else (before - corrected.get(error_type)) / before
    return rates
