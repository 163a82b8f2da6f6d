"""Writing reports as CSV or JSON."""
from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path

from ..errors import MultijointError
from ..incidence import SamplingReport
from .experiments import sampling_csv_rows


class ReportIOError(MultijointError, OSError):
    exit_code = 2


def _rows(report):
    if isinstance(report, SamplingReport):
        return sampling_csv_rows(report)
    if hasattr(report, "csv_rows"):
        return report.csv_rows()
    raise TypeError(f"{type(report).__name__} has no CSV form")


def render(report, fmt: str) -> str:
    if fmt == "json":
        data = report.to_json() if hasattr(report, "to_json") else report
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(_rows(report))
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def emit_report(report, fmt: str = "json", path=None) -> None:
    """Write ``report`` to ``path`` (stdout for None or '-')."""
    text = render(report, fmt)
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise ReportIOError(f"cannot write report to {path}: {exc}") from exc
