"""
confusion_table.py

Visually confusable pairs the noisy channel draws its corruptions from.

symbol_pairs map a source character (or digraph) containing punctuation to
what the recognizer reads instead. char_pairs are letter confusions used for
word errors and apply in both directions.

File format (UTF-8), one mapping per line, '#' comments allowed:

    _	-
    :	;
    rn	m
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple, Union

from utils.errors import InputFormatError

logger = logging.getLogger("NoisyChannelLogger")

DEFAULT_SYMBOL_PAIRS = (("_", "-"), (":", ";"), ("(", "l"))
DEFAULT_CHAR_PAIRS = (("m", "u"), ("n", "u"), ("l", "I"), ("rn", "m"), ("a", "o"))


@dataclass(frozen=True)
class ConfusionTable:
    symbol_pairs: Tuple[Tuple[str, str], ...]
    char_pairs: Tuple[Tuple[str, str], ...]

    def __post_init__(self):
        for source, target in self.symbol_pairs + self.char_pairs:
            if not source or not target:
                raise ValueError("confusion pairs cannot be empty")
            if source == target:
                raise ValueError(f"confusion pair maps {source!r} to itself")
        for source, _ in self.symbol_pairs:
            if source.isalnum():
                raise ValueError(f"symbol pair source {source!r} has no punctuation")
        sources = [s for s, _ in self.symbol_pairs]
        if len(sources) != len(set(sources)):
            raise ValueError("duplicate symbol pair source")

    @property
    def symbol_map(self) -> Dict[str, str]:
        return dict(self.symbol_pairs)

    def lookup(self, symbol: str) -> Optional[str]:
        return self.symbol_map.get(symbol)

    def symbol_keys(self) -> List[str]:
        """Symbol sources, longest first so digraphs win over their prefixes."""
        return sorted(self.symbol_map, key=lambda s: (-len(s), s))

    def match_symbol(self, text: str, pos: int) -> Optional[str]:
        for key in self.symbol_keys():
            if text.startswith(key, pos):
                return key
        return None

    def word_substitutions(self, word: str) -> List[Tuple[int, str, str]]:
        """
        Every (offset, original, corrupted) letter confusion applicable to word,
        in table order, each pair tried forwards then backwards.
        """
        candidates = []
        for a, b in self.char_pairs:
            for source, target in ((a, b), (b, a)):
                start = word.find(source)
                while start != -1:
                    candidates.append((start, source, target))
                    start = word.find(source, start + 1)
        return candidates


def default_confusion_table() -> ConfusionTable:
    return ConfusionTable(DEFAULT_SYMBOL_PAIRS, DEFAULT_CHAR_PAIRS)


def parse_confusion_table(text: str, source: str = "<text>") -> ConfusionTable:
    symbol_pairs, char_pairs = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not fields[0] or not fields[1]:
            raise InputFormatError(f"{source}:{lineno}: expected 'source<TAB>target'")
        src, tgt = fields
        if src.isalpha() and tgt.isalpha():
            char_pairs.append((src, tgt))
        else:
            symbol_pairs.append((src, tgt))
    try:
        table = ConfusionTable(tuple(symbol_pairs), tuple(char_pairs))
    except ValueError as e:
        raise InputFormatError(f"{source}: {e}") from e
    logger.debug("Parsed confusion table %s: %d symbol pairs, %d char pairs",
                 source, len(symbol_pairs), len(char_pairs))
    return table


def load_confusion_table(path: Union[str, Path]) -> ConfusionTable:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise InputFormatError(f"cannot read confusion table {path}: {e}") from e
    return parse_confusion_table(text, source=str(path))


def format_confusion_table(table: ConfusionTable) -> str:
    lines = ["# source\ttarget"]
    lines += [f"{s}\t{t}" for s, t in table.symbol_pairs + table.char_pairs]
    return "\n".join(lines) + "\n"


def table_from_mapping(symbol_pairs: Mapping[str, str], char_pairs=()) -> ConfusionTable:
    return ConfusionTable(tuple(symbol_pairs.items()), tuple(char_pairs))
