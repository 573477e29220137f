import os
import tempfile
from pathlib import Path
from typing import Union


def atomic_write_text(path: Union[str, Path], text: str) -> Path:
    """
    Writes text to a temp file in the target directory, fsyncs it, then renames
    it over the destination so readers never observe a partial file.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.remove(tmp_name)
        raise
    return path


def write_lines(path: Union[str, Path], lines) -> Path:
    return atomic_write_text(path, "".join(f"{line}\n" for line in lines))


def read_lines(path: Union[str, Path]) -> list:
    """Reads a UTF-8 text file into lines without their trailing newlines."""
    text = Path(path).read_text(encoding="utf-8")
    return text.splitlines()
