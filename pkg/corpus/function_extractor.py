#!/usr/bin/env python
"""
function_extractor.py
Description:
    Harvests handwriting-sized functions from Python source:
      - strip_comments: quote-aware removal of '#' comments.
      - extract_functions: every def (nested ones too) with its indented body,
        indentation and docstrings removed. Functions holding a statement that
        spans several physical lines (open brackets, backslash continuations,
        multi-line strings) are not harvested.
      - filter_eligible: keeps functions of 9-18 lines with no line over 60
        characters, optionally dropping highly repetitive ones.
"""

import logging
import re
from typing import Iterable, List, Optional, Sequence, Tuple

from config.config_models import CorpusConfig
from data.models import FunctionSample, TokenKind
from grammar.class_registry import ASSIGNMENT
from grammar.grammar_core import classify_statement, lex

logger = logging.getLogger("CorpusLogger")

_DEF_HEADER = re.compile(r"def\s+(?!\d)\w")
_QUOTES = ("'''", '"""', "'", '"')
_OPENERS = "([{"
_CLOSERS = ")]}"


def _strip_line(line: str, open_delim: Optional[str], depth: int = 0) -> Tuple[str, Optional[str], int]:
    """
    Removes a trailing comment from one physical line. open_delim is the
    string delimiter still open from a previous line (triple quotes only) and
    depth the bracket nesting carried over from it.
    Returns the kept text, the delimiter left open and the bracket depth at
    the end of the line.
    """
    i = 0
    delim = open_delim
    while i < len(line):
        if delim:
            if line[i] == "\\":
                i += 2
                continue
            if line.startswith(delim, i):
                i += len(delim)
                delim = None
                continue
            i += 1
            continue
        ch = line[i]
        if ch == "#":
            return line[:i].rstrip(), None, depth
        if ch in "'\"":
            delim = next(q for q in _QUOTES if line.startswith(q, i))
            i += len(delim)
            continue
        if ch in _OPENERS:
            depth += 1
        elif ch in _CLOSERS:
            depth = max(depth - 1, 0)
        i += 1
    # single-quoted strings cannot span lines
    if delim in ("'", '"'):
        delim = None
    return line.rstrip(), delim, depth


def _strip_with_lines(source: str) -> List[Tuple[int, str, bool]]:
    """
    (1-based line number, code, continues) for every line that is not a pure
    comment. continues is true when the logical line goes on past this one.
    """
    kept = []
    delim = None
    depth = 0
    for lineno, line in enumerate(source.splitlines(), 1):
        inside_string = delim is not None
        code, delim, depth = _strip_line(line, delim, depth)
        if not code.strip() and line.strip() and not inside_string:
            continue
        continues = delim is not None or depth > 0 or code.endswith("\\")
        kept.append((lineno, code, continues))
    return kept


def strip_comments(source: str) -> str:
    """'#' to end of line is removed outside string literals; comment-only lines disappear."""
    return "\n".join(code for _, code, _ in _strip_with_lines(source))


def _indent(line: str) -> int:
    return len(line) - len(line.lstrip())


def _logical_lines(region: Sequence[Tuple[str, bool]]) -> List[List[str]]:
    """Groups stripped physical lines into statements; blank lines between statements are dropped."""
    statements: List[List[str]] = []
    current: List[str] = []
    for code, continues in region:
        if not code.strip() and not current:
            continue
        current.append(code.strip())
        if not continues:
            statements.append(current)
            current = []
    if current:
        statements.append(current)
    return statements


def _is_bare_string(statement: Sequence[str]) -> bool:
    tokens = lex("\n".join(statement))
    return bool(tokens) and all(t.kind == TokenKind.STRING_LITERAL for t in tokens)


def extract_functions(source: str, origin_path: str = "<text>") -> List[FunctionSample]:
    """
    One sample per def header plus the statements indented deeper than it.
    Decorators, docstrings and interior blank lines are not part of a sample;
    async defs and functions with multi-line statements are not harvested.
    """
    lines = _strip_with_lines(source)
    samples = []
    for start, (lineno, code, continues) in enumerate(lines):
        stripped = code.lstrip()
        if not _DEF_HEADER.match(stripped):
            continue
        base = _indent(code)
        region = [(code, continues)]
        prev_continues = continues
        for _, other, other_continues in lines[start + 1:]:
            if other.strip() and not prev_continues and _indent(other) <= base:
                break
            region.append((other, other_continues))
            prev_continues = other_continues

        statements = [s for s in _logical_lines(region) if not _is_bare_string(s)]
        if any(len(s) > 1 for s in statements):
            logger.debug("Skipped %s:%d (multi-line statement)", origin_path, lineno)
            continue
        samples.append(FunctionSample(tuple(s[0] for s in statements), origin_path, lineno))
    logger.debug("Extracted %d functions from %s", len(samples), origin_path)
    return samples


def is_repetitive(sample: FunctionSample, ratio: float = 0.8) -> bool:
    """More than `ratio` of the lines are plain assignments."""
    if not sample.source_lines:
        return False
    assignments = sum(1 for line in sample.source_lines if classify_statement(line).name == ASSIGNMENT)
    return assignments / len(sample.source_lines) > ratio


def is_eligible(sample: FunctionSample, config: CorpusConfig = CorpusConfig()) -> bool:
    if not config.min_lines <= len(sample) <= config.max_lines:
        return False
    if any(len(line) > config.max_line_length for line in sample.source_lines):
        return False
    if config.exclude_repetitive and is_repetitive(sample, config.repetitive_ratio):
        return False
    return True


def filter_eligible(samples: Iterable[FunctionSample], config: CorpusConfig = CorpusConfig()) -> List[FunctionSample]:
    samples = list(samples)
    eligible = [s for s in samples if is_eligible(s, config)]
    logger.info("%d of %d functions eligible (%d-%d lines, max %d chars)",
                len(eligible), len(samples), config.min_lines, config.max_lines, config.max_line_length)
    return eligible
