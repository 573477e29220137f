import hashlib
import logging
import re
from pathlib import Path
from typing import Iterable, List, Sequence, Union

import numpy as np
from tqdm import tqdm

from corpus.function_extractor import extract_functions
from data.models import FunctionSample
from utils.errors import InputFormatError, InsufficientCorpusError
from utils.file_ops import atomic_write_text

logger = logging.getLogger("CorpusLogger")

INDEX_FILENAME = "index.txt"


def collect_functions(src_dir: Union[str, Path],
                      extensions: Sequence[str] = (".py",),
                      show_progress: bool = False) -> List[FunctionSample]:
    """Extracts functions from every matching file under src_dir, in sorted path order."""
    root = Path(src_dir)
    if not root.is_dir():
        raise InputFormatError(f"source directory not found: {root}")
    wanted = {ext.lower() for ext in extensions}
    paths = sorted(p for p in root.rglob("*") if p.is_file() and p.suffix.lower() in wanted)

    samples: List[FunctionSample] = []
    for path in tqdm(paths, desc="Extracting", unit="file", disable=not show_progress):
        try:
            text = path.read_text(encoding="utf-8")
        except UnicodeDecodeError:
            logger.warning("Skipping %s: not UTF-8", path)
            continue
        samples.extend(extract_functions(text, path.relative_to(root).as_posix()))
    logger.info("Collected %d functions from %d files under %s", len(samples), len(paths), root)
    return samples


def sample_functions(eligible: Sequence[FunctionSample], n: int, seed: int) -> List[FunctionSample]:
    """n functions drawn without replacement; the seed fixes the selection and its order."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > len(eligible):
        raise InsufficientCorpusError(n, len(eligible))
    if n == 0:
        return []
    rng = np.random.Generator(np.random.PCG64(seed))
    picks = rng.choice(len(eligible), size=n, replace=False)
    return [eligible[int(i)] for i in picks]


def sample_filename(sample: FunctionSample) -> str:
    slug = re.sub(r"[^A-Za-z0-9]+", "_", sample.origin).strip("_") or "sample"
    digest = hashlib.sha1(sample.text.encode("utf-8")).hexdigest()[:10]
    return f"{slug}-{digest}.txt"


def write_samples(samples: Iterable[FunctionSample], out_dir: Union[str, Path]) -> List[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written, index = [], []
    for sample in samples:
        name = sample_filename(sample)
        written.append(atomic_write_text(out / name, sample.text + "\n"))
        index.append(f"{name}\t{sample.origin}")
    atomic_write_text(out / INDEX_FILENAME, "".join(f"{row}\n" for row in index))
    logger.info("Wrote %d samples to %s", len(written), out)
    return written
