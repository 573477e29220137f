"""
injection_log.py

Ground-truth record of every mutation the noisy channel made, stored as
tab-separated lines:

    line_index<TAB>error_type<TAB>original<TAB>corrupted<TAB>position

position is the offset in the noisy line where `corrupted` starts.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union

from data.models import ErrorBreakdown, ErrorType, InjectionRecord
from utils.errors import InputFormatError
from utils.file_ops import atomic_write_text

logger = logging.getLogger("NoisyChannelLogger")

LOG_HEADER = "# line_index\terror_type\toriginal\tcorrupted\tposition"


@dataclass(frozen=True)
class InjectionLog:
    records: Tuple[InjectionRecord, ...] = ()

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def for_line(self, line_index: int) -> List[InjectionRecord]:
        return sorted((r for r in self.records if r.line_index == line_index), key=lambda r: r.position)

    def by_line(self) -> Dict[int, List[InjectionRecord]]:
        grouped: Dict[int, List[InjectionRecord]] = {}
        for record in sorted(self.records, key=lambda r: (r.line_index, r.position)):
            grouped.setdefault(record.line_index, []).append(record)
        return grouped

    def counts(self) -> ErrorBreakdown:
        return ErrorBreakdown(
            sum(1 for r in self.records if r.error_type == ErrorType.WORD),
            sum(1 for r in self.records if r.error_type == ErrorType.SYMBOL),
            sum(1 for r in self.records if r.error_type == ErrorType.SPACE),
        )

    def replay(self, clean_lines: Sequence[str]) -> List[str]:
        """Re-applies the recorded mutations to the clean lines."""
        noisy = list(clean_lines)
        for line_index, records in self.by_line().items():
            if not 0 <= line_index < len(noisy):
                raise InputFormatError(f"injection log refers to missing line {line_index}")
            noisy[line_index] = replay_line(noisy[line_index], records)
        return noisy


def replay_line(clean: str, records: Sequence[InjectionRecord]) -> str:
    parts = []
    cursor = 0
    offset = 0
    for record in sorted(records, key=lambda r: r.position):
        at = record.position - offset
        if at < cursor or clean[at:at + len(record.original)] != record.original:
            raise InputFormatError(
                f"line {record.line_index}: {record.original!r} not found at clean offset {at}"
            )
        parts.append(clean[cursor:at])
        parts.append(record.corrupted)
        cursor = at + len(record.original)
        offset += len(record.corrupted) - len(record.original)
    parts.append(clean[cursor:])
    return "".join(parts)


def format_injection_log(log: InjectionLog) -> str:
    lines = [LOG_HEADER]
    for r in sorted(log.records, key=lambda r: (r.line_index, r.position)):
        lines.append(f"{r.line_index}\t{r.error_type.value}\t{r.original}\t{r.corrupted}\t{r.position}")
    return "\n".join(lines) + "\n"


def parse_injection_log(text: str, source: str = "<text>") -> InjectionLog:
    records = []
    for lineno, raw in enumerate(text.split("\n"), 1):
        # fields may be a lone space, so only the line break is removed
        line = raw.rstrip("\r")
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 5:
            raise InputFormatError(f"{source}:{lineno}: expected 5 tab-separated fields, got {len(fields)}")
        try:
            records.append(InjectionRecord(
                line_index=int(fields[0]),
                position=int(fields[4]),
                error_type=ErrorType(fields[1]),
                original=fields[2],
                corrupted=fields[3],
            ))
        except ValueError as e:
            raise InputFormatError(f"{source}:{lineno}: {e}") from e
    return InjectionLog(tuple(records))


def write_injection_log(log: InjectionLog, path: Union[str, Path]) -> Path:
    path = Path(path)
    atomic_write_text(path, format_injection_log(log))
    logger.debug("Wrote %d injection records to %s", len(log), path)
    return path


def read_injection_log(path: Union[str, Path]) -> InjectionLog:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise InputFormatError(f"cannot read injection log {path}: {e}") from e
    return parse_injection_log(text, source=str(path))
