"""
synthetic_corpus.py

Deterministic generator of small Python functions for end-to-end runs.

Every function declares all the names its body uses in its def line, so the
first line of a sample seeds the lexicon with each name. Names come from a
pool whose members are pairwise dissimilar (similarity below 0.7), mixing
plain, snake_case and camelCase names; methods add self.attribute access.
No name starts with a keyword or a word close to a statement keyword, so a
space inserted inside it cannot change how its line classifies.
"""

from typing import List, Sequence

import numpy as np

from data.models import FunctionSample

PLAIN_NAMES = ("counter", "payload", "session", "request", "handler",
               "message", "timeout", "records", "journal", "weights")
SNAKE_NAMES = ("max_depth", "row_total", "user_name", "file_path")
CAMEL_NAMES = ("lastValue", "itemCount", "tokenList", "retryLimit")
NAME_POOL = PLAIN_NAMES + SNAKE_NAMES + CAMEL_NAMES

FUNCTION_NAMES = ("build_index", "load_state", "flush_queue", "parse_block",
                  "apply_patch", "check_limits", "emit_event", "scan_table")

ORIGIN_PATH = "synthetic.py"

# a, b, c are parameters; n is a small integer
_SIMPLE = (
    "{a} = {a} + {b}",
    "{b} = {c} * {n}",
    "{a} = {b} - {n}",
    "{c} = {a}[{n}]",
    "{a} = {b}({c}, {n})",
    "{c} += {n}",
    "{b} = {a} or {c}",
    "yield {c}",
    "pass",
)
_COMPOUND = (
    "if {a} > {n}:",
    "while {b} < {n}:",
    "for {a} in {c}:",
    "elif {c} == {n}:",
    "if {a} and {b}:",
)
_METHOD_SIMPLE = (
    "self.{a} = {b}",
    "{c} = self.{a} + {n}",
    "self.{b} += {n}",
)


def _function(rng: np.random.Generator, index: int) -> FunctionSample:
    names = [str(x) for x in rng.choice(NAME_POOL, size=3, replace=False)]
    fname = FUNCTION_NAMES[index % len(FUNCTION_NAMES)]
    method = bool(rng.random() < 0.5)
    params = (["self"] if method else []) + names
    lines = [f"def {fname}({', '.join(params)}):"]

    simple = _SIMPLE + (_METHOD_SIMPLE if method else ())
    length = int(rng.integers(9, 19))
    last_compound = True
    while len(lines) < length - 1:
        use_compound = not last_compound and rng.random() < 0.35
        pool = _COMPOUND if use_compound else simple
        template = pool[int(rng.integers(len(pool)))]
        a, b, c = (str(x) for x in rng.permutation(names))
        lines.append(template.format(a=a, b=b, c=c, n=int(rng.integers(0, 10))))
        last_compound = use_compound
    lines.append(f"return {names[0]}")
    return FunctionSample(tuple(lines), ORIGIN_PATH, index * 20 + 1)


def build_functions(n: int, seed: int = 0) -> List[FunctionSample]:
    """n functions of 9 to 18 lines, none longer than 60 characters."""
    rng = np.random.Generator(np.random.PCG64(seed))
    return [_function(rng, i) for i in range(n)]


def sample_lines(samples: Sequence[FunctionSample]) -> List[List[str]]:
    return [list(s.source_lines) for s in samples]
