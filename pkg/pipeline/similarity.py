from typing import Hashable, Sequence, Union

from rapidfuzz.distance import Levenshtein

Units = Union[str, Sequence[Hashable]]


def levenshtein(a: Units, b: Units) -> int:
    """
    Minimum number of single-unit insertions, deletions and substitutions
    turning a into b. Works on strings and on sequences of hashable units.
    """
    return Levenshtein.distance(a, b)


def similarity(a: str, b: str, case_insensitive: bool = True) -> float:
    """1 - levenshtein / max length; two empty strings are identical (1.0)."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    if case_insensitive:
        a, b = a.casefold(), b.casefold()
    # casefold can lengthen text (e.g. 'ß' -> 'ss'), so clamp at 0
    return max(0.0, 1.0 - levenshtein(a, b) / longest)
