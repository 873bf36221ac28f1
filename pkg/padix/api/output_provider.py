import csv
import io
from pathlib import Path
from typing import Optional

import click

from padix.constants import CSV_DELIMITER, CSV_HEADER
from padix.models.results import ResultTable, SuiteReport
from padix.utils import padix_echo
from padix.utils.json import JsonUtils


def _emit(content: str, out_file: Optional[Path]):
    if out_file:
        out_file.write_text(content, encoding="utf-8")
        padix_echo(f"Output written to {out_file}")
    else:
        click.echo(content, nl=False)


class OutputProvider:
    """Renders a result table as JSON or CSV, to stdout or to a file."""

    def __init__(self, table: ResultTable, output_format: str = "json", out_file: Optional[Path] = None):
        self._table = table
        self._format = output_format
        self._out_file = out_file

    def _to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, delimiter=CSV_DELIMITER, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in self._table.rows:
            writer.writerow([row.char, row.component, row.value, row.certified_mod])
        return buffer.getvalue()

    def render(self) -> str:
        if self._format == "csv":
            return self._to_csv()
        return JsonUtils.dumps(self._table.dict()) + "\n"

    def provide(self):
        _emit(self.render(), self._out_file)


class ReportProvider:
    """Renders the outcome of the identity suites, one :code:`identity: STATUS` line per check."""

    def __init__(self, report: SuiteReport, out_file: Optional[Path] = None):
        self._report = report
        self._out_file = out_file

    def render(self) -> str:
        lines = [f"padix verify p={self._report.p} M={self._report.M}"]
        for check in self._report.checks:
            detail = f" ({check.detail})" if check.detail else ""
            lines.append(f"[{check.suite}] {check.identity}: {check.status}{detail}")
        failed = sum(1 for check in self._report.checks if not check.passed)
        lines.append(f"{len(self._report.checks) - failed} passed, {failed} failed")
        return "\n".join(lines) + "\n"

    def provide(self):
        _emit(self.render(), self._out_file)
