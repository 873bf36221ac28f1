from typing import Any, Dict, List

from pydantic import BaseModel


class ResultRow(BaseModel):
    char: str
    component: int
    value: str
    certified_mod: str


class ResultTable(BaseModel):
    command: str
    p: int
    M: int
    rows: List[ResultRow] = []
    certificates: List[Dict[str, Any]] = []


class CheckResult(BaseModel):
    suite: str
    identity: str
    passed: bool
    detail: str = ""

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"


class SuiteReport(BaseModel):
    p: int
    M: int
    checks: List[CheckResult] = []

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)
