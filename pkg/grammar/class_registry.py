#!/usr/bin/env python
"""
class_registry.py
Description:
    The registry of Python statement classes and their productions.

    Built in are the fourteen classes def, if, elif, for, while, try, except,
    else, break, return, yield, raise, pass and assignment. A registry file can
    extend or override them, one class per line:

        # name = <requires colon> <pattern elements...>
        with  = true keyword tail
        class = true keyword name tail

    Pattern elements: keyword, name, identifier, symbol, literal, tail.
"""

import logging
from pathlib import Path
from typing import Dict, Iterable, List, Tuple, Union

from data.models import Production, StatementClass
from utils.errors import InputFormatError

logger = logging.getLogger("GrammarLogger")

ASSIGNMENT = "assignment"

PATTERN_ELEMENTS = frozenset({"keyword", "name", "identifier", "symbol", "literal", "tail"})

COLON_CLASSES = frozenset({"def", "if", "elif", "for", "while", "try", "except", "else"})

BUILTIN_CLASS_NAMES = (
    "def", "if", "elif", "for", "while", "try", "except", "else",
    "break", "return", "yield", "raise", "pass", ASSIGNMENT,
)

_BUILTIN_PATTERNS = {
    "def": ("keyword", "name", "tail"),
    "for": ("keyword", "identifier", "tail"),
    ASSIGNMENT: ("tail",),
}


def _validate_production(production: Production) -> Production:
    name = production.statement_class.name
    if not production.pattern:
        raise InputFormatError(f"class {name!r} has an empty pattern")
    unknown = [e for e in production.pattern if e not in PATTERN_ELEMENTS]
    if unknown:
        raise InputFormatError(f"class {name!r} uses unknown pattern elements {unknown}")
    if name != ASSIGNMENT and production.pattern[0] != "keyword":
        raise InputFormatError(f"class {name!r} must start with its keyword")
    if name == ASSIGNMENT and "keyword" in production.pattern:
        raise InputFormatError("the assignment class has no keyword")
    return production


class ClassRegistry:
    """Immutable name -> Production mapping. Always contains 'assignment'."""

    def __init__(self, productions: Iterable[Production]):
        self._productions: Dict[str, Production] = {}
        for production in productions:
            _validate_production(production)
            self._productions[production.statement_class.name] = production
        if ASSIGNMENT not in self._productions:
            raise InputFormatError("a class registry needs an 'assignment' class")

    def __contains__(self, name: str) -> bool:
        return name in self._productions

    def __len__(self):
        return len(self._productions)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(self._productions)

    @property
    def keyword_class_names(self) -> Tuple[str, ...]:
        return tuple(n for n in self._productions if n != ASSIGNMENT)

    @property
    def assignment(self) -> StatementClass:
        return self._productions[ASSIGNMENT].statement_class

    def get(self, name: str) -> StatementClass:
        return self.production(name).statement_class

    def production(self, name: str) -> Production:
        try:
            return self._productions[name]
        except KeyError:
            raise KeyError(f"unknown statement class {name!r}") from None

    def with_overrides(self, productions: Iterable[Production]) -> "ClassRegistry":
        merged = dict(self._productions)
        for production in productions:
            merged[production.statement_class.name] = production
        return ClassRegistry(merged.values())


def builtin_productions() -> List[Production]:
    return [
        Production(
            StatementClass(name, name in COLON_CLASSES),
            _BUILTIN_PATTERNS.get(name, ("keyword", "tail")),
        )
        for name in BUILTIN_CLASS_NAMES
    ]


DEFAULT_REGISTRY = ClassRegistry(builtin_productions())


def parse_registry_text(text: str, source: str = "<text>") -> List[Production]:
    productions = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        name, sep, rest = stripped.partition("=")
        name = name.strip()
        fields = rest.split()
        if not sep or not name.isidentifier() or len(fields) < 2:
            raise InputFormatError(f"{source}:{lineno}: expected 'name = <true|false> <pattern...>'")
        flag = fields[0].lower()
        if flag not in ("true", "false"):
            raise InputFormatError(f"{source}:{lineno}: colon flag must be true or false, got {fields[0]!r}")
        production = Production(StatementClass(name, flag == "true"), tuple(fields[1:]))
        try:
            productions.append(_validate_production(production))
        except InputFormatError as e:
            raise InputFormatError(f"{source}:{lineno}: {e}") from e
    return productions


def load_class_registry(path: Union[str, Path], base: ClassRegistry = DEFAULT_REGISTRY) -> ClassRegistry:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputFormatError(f"cannot read class registry {path}: {e}") from e
    registry = base.with_overrides(parse_registry_text(text, source=str(path)))
    logger.info("Loaded class registry from %s (%d classes)", path, len(registry))
    return registry
