"""
report_writer.py

Renders per-sample results as CSV-style text with a group-mean footer, or
as JSON. The text report looks like:

    sample_id,writer_id,wer,cer,word_errors,symbol_errors,space_errors
    s1,w1,12.50,3.10,1,0,2
    # group,s1,1,12.50,3.10,1.00,0.00,2.00
"""

import csv
import io
import json
from typing import Dict, List, Optional, Sequence

from data.models import ErrorType, GroupSummary, SampleResult
from metrics.error_rates import aggregate_report
from utils.errors import InputFormatError

REPORT_COLUMNS = ("sample_id", "writer_id", "wer", "cer", "word_errors", "symbol_errors", "space_errors")
GROUP_COLUMNS = ("sample_id", "count", "mean_wer", "mean_cer",
                 "mean_word_errors", "mean_symbol_errors", "mean_space_errors")
FOOTER_PREFIX = "# group"


def _result_row(result: SampleResult) -> List[str]:
    b = result.breakdown
    return [result.sample_id, result.writer_id, f"{result.wer:.2f}", f"{result.cer:.2f}",
            str(b.word_errors), str(b.symbol_errors), str(b.space_errors)]


def _summary_row(summary: GroupSummary) -> List[str]:
    return [FOOTER_PREFIX, summary.sample_id, str(summary.count),
            f"{summary.mean_wer:.2f}", f"{summary.mean_cer:.2f}",
            f"{summary.mean_word_errors:.2f}", f"{summary.mean_symbol_errors:.2f}",
            f"{summary.mean_space_errors:.2f}"]


def format_report(results: Sequence[SampleResult], summaries: Optional[Sequence[GroupSummary]] = None) -> str:
    if summaries is None:
        summaries = aggregate_report(results)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for result in results:
        writer.writerow(_result_row(result))
    for summary in summaries:
        writer.writerow(_summary_row(summary))
    return buffer.getvalue()


def report_dict(results: Sequence[SampleResult],
                summaries: Optional[Sequence[GroupSummary]] = None,
                fix_rates: Optional[Dict[ErrorType, Optional[float]]] = None) -> dict:
    if summaries is None:
        summaries = aggregate_report(results)
    payload = {
        "results": [
            {
                "sample_id": r.sample_id,
                "writer_id": r.writer_id,
                "wer": round(r.wer, 4),
                "cer": round(r.cer, 4),
                "word_errors": r.breakdown.word_errors,
                "symbol_errors": r.breakdown.symbol_errors,
                "space_errors": r.breakdown.space_errors,
            }
            for r in results
        ],
        "groups": [
            {name: (round(value, 4) if isinstance(value, float) else value)
             for name, value in zip(GROUP_COLUMNS, (s.sample_id, s.count, s.mean_wer, s.mean_cer,
                                                    s.mean_word_errors, s.mean_symbol_errors,
                                                    s.mean_space_errors))}
            for s in summaries
        ],
    }
    if fix_rates is not None:
        payload["fix_rates"] = {t.value: (None if v is None else round(v, 4)) for t, v in fix_rates.items()}
    return payload


def format_report_json(results: Sequence[SampleResult],
                       summaries: Optional[Sequence[GroupSummary]] = None,
                       fix_rates: Optional[Dict[ErrorType, Optional[float]]] = None) -> str:
    return json.dumps(report_dict(results, summaries, fix_rates), indent=2, sort_keys=True) + "\n"


def parse_report(text: str) -> List[dict]:
    """Reads the per-sample records of a text report back, checking its schema."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(header) != REPORT_COLUMNS:
        raise InputFormatError(f"report header must be {','.join(REPORT_COLUMNS)}")
    records = []
    for lineno, row in enumerate(reader, 2):
        if not row or row[0] == FOOTER_PREFIX:
            continue
        if len(row) != len(REPORT_COLUMNS):
            raise InputFormatError(f"report line {lineno}: expected {len(REPORT_COLUMNS)} fields")
        try:
            records.append({
                "sample_id": row[0],
                "writer_id": row[1],
                "wer": float(row[2]),
                "cer": float(row[3]),
                "word_errors": int(row[4]),
                "symbol_errors": int(row[5]),
                "space_errors": int(row[6]),
            })
        except ValueError as e:
            raise InputFormatError(f"report line {lineno}: {e}") from e
    return records
