#!/usr/bin/env python
"""
error_injector.py

A seeded noisy channel standing in for a handwriting recognizer. It corrupts
clean source lines with the three error types recognizers make on code:

  - word errors:   one confusable letter pair swapped inside an identifier
                   ("name" -> "naue")
  - symbol errors: a punctuation character read as another ("_" -> "-")
  - space errors:  a space inserted at a camelCase hump, after an interior
                   underscore, or after a dot ("ConflictError" -> "Conflict Error")

The probabilities are model parameters, not measured recognizer statistics.
Draws come from numpy's PCG64 generator in a fixed order, so a seed fully
determines both the noisy text and its injection log.
"""

import logging
import re
from dataclasses import dataclass
from typing import Collection, List, Optional, Sequence, Tuple

import numpy as np

from config.config_models import NoiseConfig
from data.models import ErrorType, InjectionRecord
from grammar.grammar_core import DEFAULT_KEYWORDS, KeywordSet
from noisy_channel.confusion_table import ConfusionTable, default_confusion_table
from noisy_channel.injection_log import InjectionLog

logger = logging.getLogger("NoisyChannelLogger")

_STRING = (
    r"(?:[rRbBuUfF]{1,2})?"
    r"(?:'''.*?(?:'''|$)|\"\"\".*?(?:\"\"\"|$)"
    r"|'(?:\\.|[^'\\])*(?:'|$)|\"(?:\\.|[^\"\\])*(?:\"|$))"
)
_UNITS = re.compile(
    rf"(?P<string>{_STRING})|(?P<word>(?!\d)\w+)|(?P<number>\d\w*)|(?P<ws>\s+)|(?P<symbols>[^\w\s'\"]+)",
    re.DOTALL,
)


@dataclass(frozen=True)
class _Mutation:
    start: int
    end: int
    error_type: ErrorType
    original: str
    corrupted: str


class _LinePlan:
    """Mutations chosen for one line; spans never overlap and inserts never touch a span."""

    def __init__(self):
        self.mutations: List[_Mutation] = []

    def span_free(self, start: int, end: int) -> bool:
        for m in self.mutations:
            if m.start == m.end:
                if start <= m.start <= end:
                    return False
            elif start < m.end and m.start < end:
                return False
        return True

    def insert_free(self, at: int) -> bool:
        return all(not (m.start <= at <= m.end) for m in self.mutations)

    def add(self, mutation: _Mutation):
        self.mutations.append(mutation)

    def apply(self, line_index: int, clean: str) -> Tuple[str, List[InjectionRecord]]:
        parts, records = [], []
        cursor, offset = 0, 0
        for m in sorted(self.mutations, key=lambda m: (m.start, m.end)):
            parts.append(clean[cursor:m.start])
            records.append(InjectionRecord(line_index, m.start + offset, m.error_type, m.original, m.corrupted))
            parts.append(m.corrupted)
            cursor = m.end
            offset += len(m.corrupted) - len(m.original)
        parts.append(clean[cursor:])
        return "".join(parts), records


class ErrorInjector:
    def __init__(self,
                 config: NoiseConfig = NoiseConfig(),
                 table: Optional[ConfusionTable] = None,
                 keywords: KeywordSet = DEFAULT_KEYWORDS):
        """
        :param config: per-site probabilities and the seed of the random stream.
        :param table: confusion pairs; the built-in table when omitted.
        :param keywords: words never given word errors.
        """
        self.config = config
        self.table = table or default_confusion_table()
        self.keywords = keywords
        self.rng = np.random.Generator(np.random.PCG64(config.seed))

    def _draw(self, probability: float) -> bool:
        return bool(self.rng.random() < probability)

    def _plan_word(self, plan: _LinePlan, word: str, base: int):
        if word in self.keywords:
            return

        if self._draw(self.config.p_word):
            candidates = self.table.word_substitutions(word)
            if candidates:
                offset, original, corrupted = candidates[int(self.rng.integers(len(candidates)))]
                plan.add(_Mutation(base + offset, base + offset + len(original), ErrorType.WORD, original, corrupted))

        # interior punctuation only; a leading '_' read as '-' would be an operator
        pos = 1
        while pos < len(word) - 1:
            key = self.table.match_symbol(word, pos)
            if key is None or pos + len(key) > len(word) - 1:
                pos += 1
                continue
            start, end = base + pos, base + pos + len(key)
            if self._draw(self.config.p_symbol) and plan.span_free(start, end):
                plan.add(_Mutation(start, end, ErrorType.SYMBOL, key, self.table.symbol_map[key]))
            pos += len(key)

        for i in range(1, len(word)):
            hump = word[i - 1].islower() and word[i].isupper()
            after_underscore = word[i - 1] == "_" and i - 1 > 0 and word[i] != "_"
            if (hump or after_underscore) and self._draw(self.config.p_space):
                if plan.insert_free(base + i):
                    plan.add(_Mutation(base + i, base + i, ErrorType.SPACE, "", " "))

    def _plan_symbols(self, plan: _LinePlan, run: str, base: int, dotted: bool):
        pos = 0
        while pos < len(run):
            key = self.table.match_symbol(run, pos)
            if key is None:
                pos += 1
                continue
            start, end = base + pos, base + pos + len(key)
            if self._draw(self.config.p_symbol) and plan.span_free(start, end):
                plan.add(_Mutation(start, end, ErrorType.SYMBOL, key, self.table.symbol_map[key]))
            pos += len(key)
        if dotted and self._draw(self.config.p_space):
            at = base + len(run)
            if plan.insert_free(at):
                plan.add(_Mutation(at, at, ErrorType.SPACE, "", " "))

    def inject_line(self, line_index: int, line: str) -> Tuple[str, List[InjectionRecord]]:
        plan = _LinePlan()
        units = list(_UNITS.finditer(line))
        for k, unit in enumerate(units):
            kind = unit.lastgroup
            if kind == "word":
                self._plan_word(plan, unit.group(), unit.start())
            elif kind == "symbols":
                dotted = (
                    unit.group() == "."
                    and 0 < k < len(units) - 1
                    and units[k - 1].lastgroup == "word"
                    and units[k + 1].lastgroup == "word"
                )
                self._plan_symbols(plan, unit.group(), unit.start(), dotted)
        noisy, records = plan.apply(line_index, line)
        for record in records:
            logger.debug("line %d: %s error %r -> %r at %d", line_index, record.error_type.value,
                         record.original, record.corrupted, record.position)
        return noisy, records

    def inject(self, clean: Sequence[str], untouched: Collection[int] = ()) -> Tuple[List[str], InjectionLog]:
        """Corrupts every line except those listed in untouched (no draws are made for them)."""
        noisy_lines: List[str] = []
        records: List[InjectionRecord] = []
        for index, line in enumerate(clean):
            if index in untouched:
                noisy_lines.append(line)
                continue
            noisy, line_records = self.inject_line(index, line)
            noisy_lines.append(noisy)
            records.extend(line_records)
        log = InjectionLog(tuple(records))
        logger.info("Injected %d errors into %d lines (seed %d)", len(log), len(noisy_lines), self.config.seed)
        return noisy_lines, log


def inject_errors(clean: Sequence[str],
                  config: NoiseConfig = NoiseConfig(),
                  table: Optional[ConfusionTable] = None) -> Tuple[List[str], InjectionLog]:
    return ErrorInjector(config, table).inject(clean)
