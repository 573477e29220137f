#!/usr/bin/env python
"""
grammar_core.py
Description:
    Statement-level Python grammar used by the correction pipeline:
      - KeywordSet: the reserved words the recognizer was primed with.
      - classify_statement: picks a statement class from the first token,
        repairing a misrecognized leading keyword by similarity.
      - parse_statement: a left-to-right, production-directed tokenizer.
        Every input parses; anything the production does not name falls into
        identifier / symbol / literal tokens for downstream correction.
"""

import keyword
import logging
import re
from typing import Iterable, List, Optional

from data.models import Production, StatementClass, Token, TokenKind
from grammar.class_registry import DEFAULT_REGISTRY, ClassRegistry
from pipeline.similarity import similarity
from utils.errors import EmptyStatementError

logger = logging.getLogger("GrammarLogger")

DEFAULT_FUZZY_THRESHOLD = 0.7


class KeywordSet:
    """Immutable set of reserved words."""

    def __init__(self, keywords: Iterable[str]):
        self._keywords = frozenset(keywords)

    def __contains__(self, word: object) -> bool:
        return word in self._keywords

    def __iter__(self):
        return iter(sorted(self._keywords))

    def __len__(self):
        return len(self._keywords)

    def __repr__(self):
        return f"KeywordSet({len(self._keywords)} keywords)"

    @classmethod
    def for_registry(cls, registry: ClassRegistry) -> "KeywordSet":
        return cls(set(keyword.kwlist) | set(registry.keyword_class_names))


DEFAULT_KEYWORDS = KeywordSet.for_registry(DEFAULT_REGISTRY)

# Words that may legally sit next to another name with only a space between.
MERGE_BLOCKERS = frozenset(keyword.kwlist) | (frozenset(keyword.softkwlist) - {"_"})

###############################################################################
# Lexemes
###############################################################################

_WORD = r"(?!\d)\w+"
_STRING = (
    r"(?:[rRbBuUfF]{1,2})?"
    r"(?:'''.*?(?:'''|$)|\"\"\".*?(?:\"\"\"|$)"
    r"|'(?:\\.|[^'\\])*(?:'|$)|\"(?:\\.|[^\"\\])*(?:\"|$))"
)
_NUMBER = r"\d\w*(?:\.\d\w*)?"
_DOTTED = rf"{_WORD}(?:\s*\.\s*{_WORD})*"

_LEXEME = re.compile(
    rf"(?P<ws>\s+)|(?P<string>{_STRING})|(?P<number>{_NUMBER})|(?P<name>{_DOTTED})|(?P<symbol>[^\w\s'\"]+)",
    re.DOTALL,
)
_WS = re.compile(r"\s+")
_LEADING_WORD = re.compile(rf"\s*({_WORD})")
_HYPHEN_NAME = re.compile(rf"{_WORD}(?:-{_WORD})*")
_IDENTIFIER = re.compile(_DOTTED)
_AUGMENTED_ASSIGN = re.compile(r"(?:\*\*|//|>>|<<|[-+*/%&|^@])=")


def _has_whitespace(text: str) -> bool:
    return any(ch.isspace() for ch in text)


def _name_token(text: str, keywords: KeywordSet, space_before: bool, role: Optional[str] = None) -> Token:
    if text in keywords:
        return Token(text, TokenKind.KEYWORD, space_before)
    return Token(text, TokenKind.IDENTIFIER, space_before, role)


def lex(line: str, keywords: KeywordSet = DEFAULT_KEYWORDS, start: int = 0,
        space_before: bool = False) -> List[Token]:
    """Generic tokenization of line[start:]; used for the free tail of a production."""
    tokens: List[Token] = []
    pending_space = space_before
    for m in _LEXEME.finditer(line, start):
        kind, text = m.lastgroup, m.group()
        if kind == "ws":
            pending_space = True
            continue
        if kind == "string":
            tokens.append(Token(text, TokenKind.STRING_LITERAL, pending_space))
        elif kind == "number":
            tokens.append(Token(text, TokenKind.NUMBER_LITERAL, pending_space))
        elif kind == "name":
            tokens.append(_name_token(text, keywords, pending_space))
        else:
            tokens.append(Token(text, TokenKind.SYMBOL, pending_space))
        pending_space = False
    return tokens


###############################################################################
# Classification
###############################################################################

def _is_name_use(line: str, end: int) -> bool:
    """
    True when the word ending at `end` is used as a name: called, subscripted,
    dereferenced, assigned or unpacked. Keywords never appear that way.
    """
    rest = line[end:].lstrip()
    if not rest:
        return False
    if rest[0] in "(.[,":
        return True
    if rest.startswith("=") and not rest.startswith("=="):
        return True
    return bool(_AUGMENTED_ASSIGN.match(rest))


def _keyword_prefix_length(word: str, name: str) -> int:
    """Length of the keyword when the word is that keyword with a name run into it, else 0."""
    if len(word) > len(name) and word.casefold().startswith(name.casefold()):
        return len(name)
    return 0


def _plausible_misreading(word: str, name: str) -> bool:
    """A misread keyword keeps its length within one character, or is the keyword glued to a name."""
    return abs(len(word) - len(name)) <= 1 or _keyword_prefix_length(word, name) > 0


def classify_statement(line: str,
                       keywords: KeywordSet = DEFAULT_KEYWORDS,
                       fuzzy_threshold: Optional[float] = DEFAULT_FUZZY_THRESHOLD,
                       registry: ClassRegistry = DEFAULT_REGISTRY) -> StatementClass:
    """
    Classifies a statement by its first token. An exact class keyword wins;
    otherwise the most similar class keyword at or above fuzzy_threshold
    (None disables repair); otherwise the statement is an assignment.
    """
    if not line or not line.strip():
        raise EmptyStatementError("cannot classify a blank statement")

    m = _LEADING_WORD.match(line)
    if not m or not line.split()[0].startswith(m.group(1)):
        return registry.assignment
    word = m.group(1)

    class_names = [name for name in registry.keyword_class_names if name in keywords]
    if word in class_names:
        return registry.get(word)
    if fuzzy_threshold is None or word in keywords or _is_name_use(line, m.end(1)):
        return registry.assignment

    best_name, best_score = None, -1.0
    for name in class_names:
        score = similarity(word, name, case_insensitive=True)
        if score > best_score:
            best_name, best_score = name, score
    if best_name is not None and best_score >= fuzzy_threshold and _plausible_misreading(word, best_name):
        logger.debug("Repaired leading keyword %r -> %r (similarity %.2f)", word, best_name, best_score)
        return registry.get(best_name)
    return registry.assignment


def requires_trailing_colon(statement_class: StatementClass) -> bool:
    return statement_class.requires_trailing_colon


###############################################################################
# Parsing
###############################################################################

def parse_statement(line: str,
                    statement_class: StatementClass,
                    registry: ClassRegistry = DEFAULT_REGISTRY,
                    keywords: KeywordSet = DEFAULT_KEYWORDS) -> List[Token]:
    """
    Leftmost derivation of line against the class's production. Indentation
    is ignored. The keyword element emits the class keyword, so a repaired
    leading keyword comes out spelled correctly.
    """
    production: Production = registry.production(statement_class.name)
    pos = 0
    tokens: List[Token] = []
    pending_space = False

    def skip_ws(at: int):
        ws = _WS.match(line, at)
        return (ws.end(), bool(tokens)) if ws else (at, False)

    for element in production.pattern:
        if element == "tail":
            tokens.extend(lex(line, keywords, pos, pending_space))
            pos = len(line)
            break
        pos, pending_space = skip_ws(pos)
        if element == "keyword":
            m = _LEADING_WORD.match(line, pos)
            if m:
                tokens.append(Token(statement_class.name, TokenKind.KEYWORD, False))
                pos = m.end()
                split = _keyword_prefix_length(m.group(1), statement_class.name)
                if split:
                    # "returnx": the rest of the word is the first operand
                    tokens.extend(lex(m.group(1)[split:], keywords, 0, True))
            continue
        if element == "name":
            m = _HYPHEN_NAME.match(line, pos)
            if m:
                tokens.append(_name_token(m.group(), keywords, pending_space, role="name"))
                pos, pending_space = m.end(), False
            continue
        if element == "identifier":
            m = _IDENTIFIER.match(line, pos)
            if m:
                tokens.append(_name_token(m.group(), keywords, pending_space))
                pos, pending_space = m.end(), False
            continue
        # symbol / literal: take one generic lexeme when it has the right kind
        m = _LEXEME.match(line, pos)
        if m and m.lastgroup != "ws":
            wanted = ("symbol",) if element == "symbol" else ("string", "number")
            if m.lastgroup in wanted:
                tokens.extend(lex(m.group(), keywords, 0, pending_space))
                pos, pending_space = m.end(), False

    if pos < len(line):
        tokens.extend(lex(line, keywords, pos, pending_space))
    logger.debug("Parsed %r as %s into %d tokens", line, statement_class.name, len(tokens))
    return tokens
