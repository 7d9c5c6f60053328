"""
Data Models
===========
Pydantic definitions for audit configs and audit reports.
"""

from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator

from config import (
    ALGEBRA_TOLERANCE,
    DEFAULT_LADDER,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    GROWTH_LIMIT,
    PAIRS_PER_RUNG,
    REPORT_PATH,
    SECTION_TOLERANCE,
)

PLANNER_SUITES = ("support", "section", "continuity")
LAW_SUITES = ("monad", "transfer", "boxtimes", "transport-oracle", "group-action")
BUNDLE = "bundle"


def check_ladder(ladder: List[float]) -> List[float]:
    if not ladder:
        raise ValueError("ladder must not be empty")
    if any(h <= 0 for h in ladder):
        raise ValueError("ladder scales must be positive")
    if any(b >= a for a, b in zip(ladder, ladder[1:])):
        raise ValueError("ladder must be strictly decreasing")
    return ladder


class AuditConfig(BaseModel):
    """
    One audit job: a planner suite on one planner and dimension, or a law suite.
    """

    suite: str
    planner: Optional[str] = None
    d: Optional[int] = None
    samples: int = Field(default=DEFAULT_SAMPLES, gt=0)
    ladder: List[float] = Field(default_factory=lambda: list(DEFAULT_LADDER))
    pairs_per_rung: int = Field(default=PAIRS_PER_RUNG, gt=0)
    seed: int = DEFAULT_SEED
    metric: Literal["w1", "lp"] = "w1"
    section_tolerance: float = SECTION_TOLERANCE
    algebra_tolerance: float = ALGEBRA_TOLERANCE
    growth_limit: float = GROWTH_LIMIT

    @field_validator("ladder")
    @classmethod
    def decreasing_ladder(cls, value: List[float]) -> List[float]:
        return check_ladder(value)

    @field_validator("suite")
    @classmethod
    def known_suite(cls, value: str) -> str:
        if value not in PLANNER_SUITES + LAW_SUITES:
            raise ValueError(f"unknown suite '{value}'")
        return value


class RunConfig(BaseModel):
    """A full run: suites × planners × dimensions plus law suites."""

    suites: List[str] = Field(default_factory=lambda: [BUNDLE])
    planners: List[str] = Field(default_factory=list)
    dims: List[Optional[int]] = Field(default_factory=lambda: [None])
    samples: int = Field(default=DEFAULT_SAMPLES, gt=0)
    ladder: List[float] = Field(default_factory=lambda: list(DEFAULT_LADDER))
    pairs_per_rung: int = Field(default=PAIRS_PER_RUNG, gt=0)
    seed: int = DEFAULT_SEED
    metric: Literal["w1", "lp"] = "w1"
    section_tolerance: float = Field(default=SECTION_TOLERANCE, gt=0)
    algebra_tolerance: float = Field(default=ALGEBRA_TOLERANCE, gt=0)
    growth_limit: float = Field(default=GROWTH_LIMIT, gt=1)
    report: Path = REPORT_PATH
    samples_csv: Optional[Path] = None
    log_level: Optional[Literal["DEBUG", "INFO", "WARNING", "ERROR"]] = None

    @field_validator("ladder")
    @classmethod
    def decreasing_ladder(cls, value: List[float]) -> List[float]:
        return check_ladder(value)

    @field_validator("log_level", mode="before")
    @classmethod
    def upper_level(cls, value: Any) -> Any:
        return value.upper() if isinstance(value, str) else value

    @field_validator("suites")
    @classmethod
    def known_suites(cls, value: List[str]) -> List[str]:
        for suite in value:
            if suite not in PLANNER_SUITES + LAW_SUITES + (BUNDLE,):
                raise ValueError(f"unknown suite '{suite}'")
        return value

    def job(self, suite: str, planner: Optional[str] = None, d: Optional[int] = None) -> AuditConfig:
        return AuditConfig(
            suite=suite,
            planner=planner,
            d=d,
            samples=self.samples,
            ladder=self.ladder,
            pairs_per_rung=self.pairs_per_rung,
            seed=self.seed,
            metric=self.metric,
            section_tolerance=self.section_tolerance,
            algebra_tolerance=self.algebra_tolerance,
            growth_limit=self.growth_limit,
        )


class CheckResult(BaseModel):
    name: str
    passed: bool
    max_error: Optional[float]
    tolerance: float
    detail: Optional[str] = None


class LadderRung(BaseModel):
    h: float
    pairs: int
    max_ratio: Optional[float]
    growth: Optional[float] = None


class FailureExemplar(BaseModel):
    check: str
    trial: int
    error: Optional[float] = None
    inputs: Any = None
    measure: Any = None
    message: Optional[str] = None


class AuditReport(BaseModel):
    """
    Outcome of one audit job. Wall time is kept out of the report so equal
    configs give byte-identical files.
    """

    suite: str
    planner: Optional[str] = None
    space: Optional[str] = None
    d: Optional[int] = None
    seed: int
    samples: int
    passed: bool = True
    checks: List[CheckResult] = Field(default_factory=list)
    declared_bound: Optional[int] = None
    max_support: Optional[int] = None
    support_histogram: Dict[str, int] = Field(default_factory=dict)
    ladder: List[LadderRung] = Field(default_factory=list)
    max_inflation: Optional[float] = None
    exemplars: List[FailureExemplar] = Field(default_factory=list)
    expected_to_fail: bool = False

    @property
    def label(self) -> str:
        parts = [self.suite]
        if self.planner:
            parts.append(self.planner)
        if self.d is not None:
            parts.append(f"d={self.d}")
        return ":".join(parts)


class RunReport(BaseModel):
    seed: int
    passed: bool
    reports: List[AuditReport]

    @property
    def failed(self) -> List[str]:
        return [report.label for report in self.reports if not report.passed]

    @property
    def surprises(self) -> List[str]:
        """Reports whose outcome differs from what their planner entry expects."""
        return [
            report.label for report in self.reports if report.passed == report.expected_to_fail
        ]
