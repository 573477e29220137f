import logging
from typing import Iterable, List, Optional, Tuple

from grammar.grammar_core import DEFAULT_KEYWORDS, KeywordSet
from pipeline.similarity import similarity

logger = logging.getLogger("PipelineLogger")


class AdaptiveLexicon:
    """
    Insertion-ordered store of accepted non-keyword tokens for one sample.
    Entries are deduplicated under exact match and keep their casing.
    """

    def __init__(self, keywords: KeywordSet = DEFAULT_KEYWORDS, entries: Iterable[str] = ()):
        self.keywords = keywords
        self._entries: List[str] = []
        self._seen = set()
        for entry in entries:
            self.add(entry)

    def add(self, text: str) -> bool:
        """Adds text unless it is empty, a keyword, or already present."""
        if not text or text in self.keywords or text in self._seen:
            return False
        self._entries.append(text)
        self._seen.add(text)
        logger.debug("Lexicon += %r (%d entries)", text, len(self._entries))
        return True

    def __contains__(self, text: object) -> bool:
        return text in self._seen

    def __iter__(self):
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def __repr__(self):
        return f"AdaptiveLexicon({self._entries!r})"

    @property
    def entries(self) -> Tuple[str, ...]:
        return tuple(self._entries)

    def find_casefold(self, text: str) -> Optional[str]:
        """Earliest entry equal to text ignoring case."""
        folded = text.casefold()
        for entry in self._entries:
            if entry.casefold() == folded:
                return entry
        return None

    def best_match(self, text: str, case_insensitive: bool = True) -> Tuple[Optional[str], float]:
        """
        Entry with the highest similarity to text; ties go to the earliest
        inserted entry. An exact entry always wins over a case variant.
        Returns (None, 0.0) for an empty lexicon.
        """
        if text in self._seen:
            return text, 1.0
        best_entry, best_score = None, 0.0
        for entry in self._entries:
            score = similarity(text, entry, case_insensitive)
            if best_entry is None or score > best_score:
                best_entry, best_score = entry, score
        return best_entry, best_score
