import json
from pathlib import Path

from padix.api.output_provider import OutputProvider, ReportProvider
from padix.models.results import CheckResult, ResultRow, ResultTable, SuiteReport
from padix.utils.json import JsonUtils


def _table() -> ResultTable:
    return ResultTable(
        command="certify",
        p=3,
        M=6,
        rows=[
            ResultRow(char="x^1", component=1, value="val=0 residue=1 mod 3^6", certified_mod="3^6"),
            ResultRow(char="x^2", component=1, value="outside U_D", certified_mod="-"),
        ],
    )


def test_csv_rendering():
    lines = OutputProvider(_table(), "csv").render().splitlines()
    assert lines == [
        "char;component;value;certified_mod",
        "x^1;1;val=0 residue=1 mod 3^6;3^6",
        "x^2;1;outside U_D;-",
    ]


def test_json_rendering():
    rendered = OutputProvider(_table()).render()
    assert rendered.endswith("\n")
    content = json.loads(rendered)
    assert content["command"] == "certify"
    assert content["rows"][1]["value"] == "outside U_D"
    assert content["certificates"] == []


def test_output_to_file(tmp_path: Path):
    out_file = tmp_path / "table.json"
    OutputProvider(_table(), "json", out_file).provide()
    content = JsonUtils.read(out_file)
    assert content["p"] == 3
    assert [row["char"] for row in content["rows"]] == ["x^1", "x^2"]


def test_report_rendering(tmp_path: Path):
    report = SuiteReport(
        p=3,
        M=6,
        checks=[
            CheckResult(suite="gauss", identity="G(eta)G(eta^-1)", passed=True, detail="n=1"),
            CheckResult(suite="ops", identity="phi psi", passed=False),
        ],
    )
    assert not report.passed
    out_file = tmp_path / "report.txt"
    ReportProvider(report, out_file).provide()
    assert out_file.read_text(encoding="utf-8").splitlines() == [
        "padix verify p=3 M=6",
        "[gauss] G(eta)G(eta^-1): PASS (n=1)",
        "[ops] phi psi: FAIL",
        "1 passed, 1 failed",
    ]
