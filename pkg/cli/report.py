"""
Report Schema
pydantic models for the versioned JSON report
"""
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from algebra.verdicts import VerdictReport
from utils.config import REPORT_SCHEMA


class VerdictModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    condition: str
    passed: bool = Field(alias='pass')
    witness: Optional[str] = None


class DiagnosticModel(BaseModel):
    line: int
    column: int
    message: str


class SectionModel(BaseModel):
    title: str
    verdicts: List[VerdictModel] = []
    notes: List[str] = []


class Report(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=REPORT_SCHEMA, alias='schema')
    command: str
    presentation: Optional[str] = None
    degree: Optional[int] = None
    filtration: Optional[str] = None
    passed: bool = Field(default=True, alias='pass')
    sections: List[SectionModel] = []
    tables: Dict[str, List[int]] = {}
    artifacts: Dict[str, str] = {}
    diagnostics: List[DiagnosticModel] = []

    def add_section(self, report: VerdictReport) -> bool:
        self.sections.append(section_from(report))
        self.passed = self.passed and report.passed
        return report.passed

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2, exclude_none=True)


def section_from(report: VerdictReport) -> SectionModel:
    return SectionModel(
        title=report.title,
        verdicts=[VerdictModel(condition=v.condition, passed=v.passed, witness=v.witness) for v in report.verdicts],
        notes=list(report.notes),
    )
