"""
Audit Runner
============
Parses flat `key = value` run files, expands them into audit jobs and runs
them sequentially.

Run file keys (all optional):

    suites          comma list: support, section, continuity, bundle, monad,
                    transfer, boxtimes, transport-oracle, group-action
    planners        comma list of registered planner names, or `all`
    dims            comma list of dimensions (ignored by circle planners)
    samples         trials per suite
    ladder          comma list of strictly decreasing scales
    pairs_per_rung  perturbed pairs per ladder rung
    seed            base seed; trial i uses seed + i
    metric          w1 or lp, for continuity probes
    section_tolerance, algebra_tolerance, growth_limit
    report          path of report.json
    samples_csv     path of the sampled path traces CSV
    log_level       DEBUG, INFO, WARNING or ERROR for this run
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import ValidationError

from audits.engine import continuity_probe, section_audit, support_audit, trial_inputs
from audits.laws import law_suite
from errors import ConfigError
from logger import get_logger, set_level
from models import (
    BUNDLE,
    LAW_SUITES,
    AuditConfig,
    AuditReport,
    RunConfig,
    RunReport,
)
from planners.base import AnalogPlanner
from planners.registry import PLANNERS, build_planner, planner_names
from reports import ReportWriter, trace_rows

logger = get_logger(__name__)

LIST_KEYS = {"suites", "planners", "dims", "ladder"}
TRACE_SAMPLES = 3

PLANNER_AUDITS: Dict[str, Callable[[AnalogPlanner, AuditConfig], AuditReport]] = {
    "support": support_audit,
    "section": section_audit,
    "continuity": continuity_probe,
}


def _value(key: str, raw: str) -> Any:
    if key in LIST_KEYS:
        items = [item.strip() for item in raw.split(",") if item.strip()]
        if key == "dims":
            return [None if item.lower() == "none" else item for item in items]
        return items
    return raw


def parse_config(text: str, overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """
    Parse a run file into a RunConfig; `overrides` (CLI flags) win over file keys.
    """
    values: Dict[str, Any] = {}
    lines: Dict[str, int] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", line=number)
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in RunConfig.model_fields:
            raise ConfigError(f"unknown key '{key}'", line=number)
        if key in values:
            raise ConfigError(f"duplicate key '{key}'", line=number)
        values[key] = _value(key, raw)
        lines[key] = number

    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
            lines.pop(key, None)

    if values.get("planners") == ["all"]:
        values["planners"] = [name for name in planner_names() if not PLANNERS[name].control]

    try:
        run = RunConfig(**values)
    except ValidationError as exc:
        error = exc.errors()[0]
        key = str(error["loc"][0]) if error["loc"] else None
        raise ConfigError(f"{key}: {error['msg']}", line=lines.get(key)) from None

    for name in run.planners:
        if name not in PLANNERS:
            raise ConfigError(f"unknown planner '{name}'", line=lines.get("planners"))
    planner_suites = [s for s in run.suites if s not in LAW_SUITES]
    if planner_suites and not run.planners:
        raise ConfigError("planner suites need at least one planner", line=lines.get("suites"))
    return run


def load_config(path: Union[str, Path], overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file {path} not found")
    return parse_config(path.read_text(encoding="utf-8"), overrides)


def expand_jobs(run: RunConfig) -> List[AuditConfig]:
    """One job per (suite, planner, dimension); law suites run once."""
    jobs: List[AuditConfig] = []
    seen: set = set()
    for suite in run.suites:
        if suite in LAW_SUITES:
            jobs.append(run.job(suite, d=next((d for d in run.dims if d is not None), None)))
            continue
        for planner in run.planners:
            entry = PLANNERS[planner]
            suites = entry.bundle if suite == BUNDLE else (suite,)
            for d in run.dims:
                dimension = None if entry.default_d is None else (d if d is not None else entry.default_d)
                for name in suites:
                    key: Tuple = (name, planner, dimension)
                    if key not in seen:
                        seen.add(key)
                        jobs.append(run.job(name, planner, dimension))
    return jobs


def run_job(config: AuditConfig) -> AuditReport:
    if config.suite in LAW_SUITES:
        return law_suite(config)
    planner = build_planner(config.planner, config.d)
    report = PLANNER_AUDITS[config.suite](planner, config)
    report.expected_to_fail = config.suite in PLANNERS[config.planner].expected_failures
    return report


def sample_traces(run: RunConfig) -> List[Dict[str, Any]]:
    """Path traces of the first few plans of every planner in the run."""
    rows: List[Dict[str, Any]] = []
    for name in run.planners:
        planner = build_planner(name, next((d for d in run.dims if d is not None), None))
        for trial in range(TRACE_SAMPLES):
            rng = np.random.default_rng(run.seed + trial)
            measure = planner.plan(*trial_inputs(planner, rng, trial))
            rows.extend(trace_rows(name, trial, measure))
    return rows


@dataclass
class RunOutcome:
    report: RunReport
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return 0 if self.report.passed else 1


def run(run_config: RunConfig, write: bool = True) -> RunOutcome:
    """
    Execute every job of the run and write report.json (plus timings.json and
    the samples CSV when configured).
    """
    if run_config.log_level:
        set_level(run_config.log_level)
    jobs = expand_jobs(run_config)
    logger.info(f"Running {len(jobs)} audit jobs (seed {run_config.seed})...")
    reports: List[AuditReport] = []
    timings: Dict[str, float] = {}
    for job in jobs:
        start_time = time.time()
        report = run_job(job)
        elapsed = time.time() - start_time
        timings[report.label] = elapsed
        status = "PASS" if report.passed else "FAIL"
        if report.expected_to_fail:
            status += " (control passed)" if report.passed else " (expected)"
        logger.info(f"{status} {report.label} ({job.samples} samples, {elapsed:.2f}s)")
        reports.append(report)

    outcome = RunOutcome(
        RunReport(seed=run_config.seed, passed=all(r.passed for r in reports), reports=reports),
        timings,
    )
    if write:
        writer = ReportWriter(run_config.report, run_config.report.parent / "timings.json")
        writer.write_report(outcome.report)
        writer.write_timings(timings)
        if run_config.samples_csv is not None and run_config.planners:
            writer.export_samples(sample_traces(run_config), run_config.samples_csv)
    if outcome.report.failed:
        logger.warning(f"Failed suites: {', '.join(outcome.report.failed)}")
    if outcome.report.surprises:
        logger.warning(f"Unexpected outcomes: {', '.join(outcome.report.surprises)}")
    elif outcome.report.failed:
        logger.info("Every failure was expected by its planner entry")
    return outcome
