#!/usr/bin/env python
"""
correction_pipeline.py
Description:
    Four-stage correction of recognized Python statements:

      1. classify    - statement class from the first token (keyword repair)
      2. parse       - production-directed tokenization
      3. token fix   - whitespace removal, split-name merging, hyphen repair and
                       replacement of identifiers by similar lexicon entries
      4. concatenate - rebuild the statement, guaranteeing the header colon

    The adaptive lexicon starts empty for every sample; the first occurrence of
    a name is trusted and later occurrences are pulled towards it.
"""

import logging
import re
from dataclasses import replace
from typing import Iterable, List, Optional, Sequence, Tuple

from config.config_models import CorrectionConfig
from data.models import StatementClass, StatementDiagnostics, Token, TokenKind
from grammar.class_registry import DEFAULT_REGISTRY, ClassRegistry
from grammar.grammar_core import (
    DEFAULT_KEYWORDS,
    MERGE_BLOCKERS,
    KeywordSet,
    classify_statement,
    parse_statement,
    requires_trailing_colon,
)
from pipeline.adaptive_lexicon import AdaptiveLexicon
from utils.errors import EmptyStatementError

logger = logging.getLogger("PipelineLogger")

COLON_REPLACEABLE = ";.,"
OPENERS = {"(": ")", "[": "]", "{": "}"}
CLOSERS = {v: k for k, v in OPENERS.items()}

_WHITESPACE = re.compile(r"\s+")


###############################################################################
# Token processing
###############################################################################

def normalize_token(token: Token) -> Token:
    """Strips all whitespace from the token text. String literals are left as written."""
    if token.kind == TokenKind.STRING_LITERAL:
        return token
    text = _WHITESPACE.sub("", token.text)
    if text == token.text:
        return token
    return replace(token, text=text)


def _resolve_segment(segment: str, lexicon: AdaptiveLexicon, config: CorrectionConfig) -> Tuple[str, bool]:
    """Returns (resolved text, near_miss)."""
    if segment in lexicon.keywords:
        return segment, False
    entry, score = lexicon.best_match(segment, config.case_insensitive_match)
    if entry is not None and score >= config.similarity_threshold:
        if entry != segment:
            logger.debug("Replaced %r with lexicon entry %r (similarity %.2f)", segment, entry, score)
        return entry, False
    lexicon.add(segment)
    near_miss = entry is not None and score >= config.flag_similarity_floor
    return segment, near_miss


def _resolve(token: Token, lexicon: AdaptiveLexicon, config: CorrectionConfig) -> Tuple[Token, bool]:
    segments = _WHITESPACE.sub("", token.text).split(".")
    resolved, near_miss = [], False
    for segment in segments:
        if not segment:
            resolved.append(segment)
            continue
        text, missed = _resolve_segment(segment, lexicon, config)
        resolved.append(text)
        near_miss = near_miss or missed
    text = ".".join(resolved)
    return (token if text == token.text else replace(token, text=text)), near_miss


def resolve_token(token: Token, lexicon: AdaptiveLexicon, config: CorrectionConfig) -> Token:
    """
    Replaces each dot-separated segment of an identifier by the most similar
    lexicon entry at or above the threshold (earliest entry on ties), or
    accepts it unchanged and adds it to the lexicon. Non-identifiers pass through.
    """
    if token.kind != TokenKind.IDENTIFIER:
        return token
    resolved, _ = _resolve(token, lexicon, config)
    return resolved


def merge_split_identifiers(tokens: Sequence[Token]) -> List[Token]:
    """
    Joins identifiers separated only by whitespace. Two bare names in a row are
    never valid Python unless one of them is a (soft) keyword.
    """
    merged: List[Token] = []
    for token in tokens:
        prev = merged[-1] if merged else None
        if (
            prev is not None
            and prev.kind == TokenKind.IDENTIFIER
            and token.kind == TokenKind.IDENTIFIER
            and prev.text not in MERGE_BLOCKERS
            and token.text not in MERGE_BLOCKERS
        ):
            logger.debug("Merged split identifier %r + %r", prev.text, token.text)
            merged[-1] = replace(prev, text=prev.text + token.text)
            continue
        merged.append(token)
    return merged


def repair_hyphens(tokens: Sequence[Token], lexicon: AdaptiveLexicon) -> List[Token]:
    """
    '-' read for '_': always fixed inside a definition name; elsewhere an
    abutting name-dash-name run is joined only when the underscore form is a
    known lexicon entry.
    """
    repaired: List[Token] = []
    i = 0
    while i < len(tokens):
        token = tokens[i]
        if token.role == "name" and "-" in token.text:
            token = replace(token, text=token.text.replace("-", "_"))
        if (
            token.kind == TokenKind.IDENTIFIER
            and i + 2 < len(tokens)
            and tokens[i + 1].kind == TokenKind.SYMBOL
            and tokens[i + 1].text == "-"
            and not tokens[i + 1].space_before
            and tokens[i + 2].kind == TokenKind.IDENTIFIER
            and not tokens[i + 2].space_before
        ):
            right = tokens[i + 2]
            junction = token.text.rsplit(".", 1)[-1] + "_" + right.text.split(".", 1)[0]
            if lexicon.find_casefold(junction) is not None:
                logger.debug("Joined %r - %r as %r", token.text, right.text, junction)
                # the joined token is looked at again so chains like a-b-c collapse
                tokens = list(tokens[:i]) + [replace(token, text=f"{token.text}_{right.text}")] + list(tokens[i + 3:])
                continue
        repaired.append(token)
        i += 1
    return repaired


###############################################################################
# Concatenation & diagnostics
###############################################################################

def has_header_colon(tokens: Sequence[Token]) -> bool:
    """
    True when a ':' outside any bracket follows the leading keyword. That colon
    closes the header; whatever comes after it is a one-line body.
    """
    depth = 0
    for token in tokens[1:]:
        if token.kind != TokenKind.SYMBOL:
            continue
        text = token.text
        for i, ch in enumerate(text):
            if ch in OPENERS:
                depth += 1
            elif ch in CLOSERS:
                depth = max(depth - 1, 0)
            elif ch == ":" and depth == 0 and text[i + 1:i + 2] != "=":
                return True
    return False


def concatenate(tokens: Sequence[Token], statement_class: StatementClass) -> str:
    """
    Joins token texts with one space wherever the source had whitespace.
    A colon-requiring statement without its header colon gets a trailing ':',
    replacing a final ';', '.' or ',' if one was read there.
    """
    if not tokens:
        raise ValueError("cannot concatenate an empty token sequence")
    texts = [t.text for t in tokens]
    spaces = [t.space_before for t in tokens]
    spaces[0] = False

    last = tokens[-1]
    ends_with_colon = last.kind == TokenKind.SYMBOL and last.text.endswith(":")
    if requires_trailing_colon(statement_class) and not (ends_with_colon or has_header_colon(tokens)):
        if last.kind == TokenKind.SYMBOL and last.text[-1] in COLON_REPLACEABLE:
            texts[-1] = last.text[:-1] + ":"
        else:
            texts.append(":")
            spaces.append(False)
    if texts[-1] == ":":
        spaces[-1] = False

    parts = []
    for text, space in zip(texts, spaces):
        if space:
            parts.append(" ")
        parts.append(text)
    return "".join(parts)


def _unmatched_positions(tokens: Sequence[Token]) -> List[int]:
    """Token index of every unmatched bracket character (one entry per character)."""
    stack: List[Tuple[str, int]] = []
    unmatched: List[int] = []
    for index, token in enumerate(tokens):
        if token.kind != TokenKind.SYMBOL:
            continue
        for ch in token.text:
            if ch in OPENERS:
                stack.append((ch, index))
            elif ch in CLOSERS:
                if stack and stack[-1][0] == CLOSERS[ch]:
                    stack.pop()
                else:
                    unmatched.append(index)
    unmatched.extend(index for _, index in stack)
    return unmatched


def detect_unbalanced(tokens: Sequence[Token]) -> StatementDiagnostics:
    unmatched = _unmatched_positions(tokens)
    return StatementDiagnostics(len(unmatched), tuple(sorted(set(unmatched))))


###############################################################################
# Statement / sample drivers
###############################################################################

def correct_statement(line: str,
                      lexicon: AdaptiveLexicon,
                      config: CorrectionConfig = CorrectionConfig(),
                      registry: ClassRegistry = DEFAULT_REGISTRY) -> Tuple[str, StatementDiagnostics]:
    if not line or not line.strip():
        raise EmptyStatementError("cannot correct a blank statement")
    keywords = lexicon.keywords

    fuzzy = config.similarity_threshold if config.fuzzy_keyword_repair else None
    statement_class = classify_statement(line, keywords, fuzzy, registry)
    tokens = parse_statement(line, statement_class, registry, keywords)

    tokens = [normalize_token(t) for t in tokens]
    tokens = merge_split_identifiers(tokens)
    tokens = repair_hyphens(tokens, lexicon)

    resolved: List[Token] = []
    near_misses: List[int] = []
    for index, token in enumerate(tokens):
        if token.kind == TokenKind.IDENTIFIER:
            token, near_miss = _resolve(token, lexicon, config)
            if near_miss:
                near_misses.append(index)
        resolved.append(token)

    corrected = concatenate(resolved, statement_class)
    unbalanced = detect_unbalanced(resolved)
    diagnostics = StatementDiagnostics(
        unbalanced.unbalanced_brackets,
        tuple(sorted(set(unbalanced.flagged_tokens) | set(near_misses))),
    )
    if diagnostics.unbalanced_brackets:
        logger.info("Unbalanced brackets in %r (%d)", corrected, diagnostics.unbalanced_brackets)
    return corrected, diagnostics


def correct_file_lines(lines: Iterable[str],
                       config: CorrectionConfig,
                       lexicon: AdaptiveLexicon,
                       registry: ClassRegistry = DEFAULT_REGISTRY) -> Tuple[List[str], List[StatementDiagnostics]]:
    """Corrects lines in written order against a caller-owned lexicon. Blank lines stay blank."""
    corrected: List[str] = []
    diagnostics: List[StatementDiagnostics] = []
    for line in lines:
        if not line.strip():
            corrected.append("")
            diagnostics.append(StatementDiagnostics())
            continue
        text, diag = correct_statement(line, lexicon, config, registry)
        corrected.append(text)
        diagnostics.append(diag)
    return corrected, diagnostics


def correct_sample(lines: Iterable[str],
                   config: CorrectionConfig = CorrectionConfig(),
                   registry: ClassRegistry = DEFAULT_REGISTRY,
                   keywords: Optional[KeywordSet] = None,
                   lexicon: Optional[AdaptiveLexicon] = None) -> Tuple[List[str], List[StatementDiagnostics]]:
    """
    Corrects one sample. A fresh lexicon is created unless one is passed in
    (the shared-lexicon mode of reset_lexicon_per_sample=False).
    """
    if lexicon is None:
        if keywords is None:
            keywords = DEFAULT_KEYWORDS if registry is DEFAULT_REGISTRY else KeywordSet.for_registry(registry)
        lexicon = AdaptiveLexicon(keywords)
    corrected, diagnostics = correct_file_lines(lines, config, lexicon, registry)
    logger.debug("Corrected %d lines; lexicon holds %d entries", len(corrected), len(lexicon))
    return corrected, diagnostics
