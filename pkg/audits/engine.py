"""
Audit Engine
============
Numerical audits of a planner: support bound, section property and an
empirical continuity ladder.

Every trial draws from its own generator `default_rng(seed + trial)`, so the
reports do not depend on the order in which trials run.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Any, Callable, List, Optional, Sequence, Tuple

import numpy as np

from config import MAX_EXEMPLARS
from geometry.spaces import max_coordinate_distance
from logger import get_logger
from measures.core import ProbMeasure
from models import AuditConfig, AuditReport, CheckResult, FailureExemplar, LadderRung
from planners.base import AnalogPlanner, Inputs
from transport.metrics import path_measure_distance

logger = get_logger(__name__)

CRITICAL_EVERY = 4


def encode_inputs(planner: AnalogPlanner, points: Sequence[Any]) -> List[Any]:
    return [space.encode(x) for space, x in zip(planner.input_spaces, points)]


def trial_inputs(planner: AnalogPlanner, rng: np.random.Generator, trial: int) -> Inputs:
    """Every CRITICAL_EVERY-th trial is drawn from the planner's hand-over locus."""
    if trial % CRITICAL_EVERY == CRITICAL_EVERY - 1:
        return planner.critical_inputs(rng)
    return planner.sample_inputs(rng)


def finite(value: float) -> Optional[float]:
    return float(value) if math.isfinite(value) else None


class ReportBuilder:
    """Accumulates checks and capped exemplars for one report."""

    def __init__(self, planner: AnalogPlanner, config: AuditConfig):
        self.planner = planner
        self.report = AuditReport(
            suite=config.suite,
            planner=config.planner or planner.name,
            space=planner.space.name,
            d=config.d,
            seed=config.seed,
            samples=config.samples,
            declared_bound=planner.bound,
        )
        self.errors = 0

    def exemplar(
        self,
        check: str,
        trial: int,
        inputs: Sequence[Any],
        measure: Optional[ProbMeasure] = None,
        error: Optional[float] = None,
        message: Optional[str] = None,
    ) -> None:
        if len(self.report.exemplars) >= MAX_EXEMPLARS:
            return
        self.report.exemplars.append(
            FailureExemplar(
                check=check,
                trial=trial,
                error=finite(error) if error is not None else None,
                inputs=encode_inputs(self.planner, inputs),
                measure=measure.to_record() if measure is not None else None,
                message=message,
            )
        )

    def guarded(self, trial: int, inputs: Inputs, call: Callable[[], Any]) -> Any:
        """Run one trial step; errors become `errors` exemplars instead of raising."""
        try:
            return call()
        except Exception as exc:
            self.errors += 1
            logger.warning(f"{self.planner.name} trial {trial}: {type(exc).__name__}: {exc}")
            self.exemplar("errors", trial, inputs, message=f"{type(exc).__name__}: {exc}")
            return None

    def check(
        self,
        name: str,
        passed: bool,
        max_error: float,
        tolerance: float,
        detail: Optional[str] = None,
    ) -> None:
        self.report.checks.append(
            CheckResult(
                name=name,
                passed=passed,
                max_error=finite(max_error),
                tolerance=tolerance,
                detail=detail,
            )
        )
        if not passed:
            logger.warning(f"{self.planner.name}: check '{name}' failed ({max_error} > {tolerance})")

    def finish(self) -> AuditReport:
        self.check("errors", self.errors == 0, float(self.errors), 0.0)
        self.report.passed = all(check.passed for check in self.report.checks)
        return self.report


def support_audit(planner: AnalogPlanner, config: AuditConfig) -> AuditReport:
    """Largest observed support against the declared bound."""
    builder = ReportBuilder(planner, config)
    histogram: Counter = Counter()
    for trial in range(config.samples):
        rng = np.random.default_rng(config.seed + trial)
        inputs = trial_inputs(planner, rng, trial)
        measure = builder.guarded(trial, inputs, lambda: planner.plan(*inputs))
        if measure is None:
            continue
        size = measure.support_size
        histogram[size] += 1
        if size > planner.bound:
            builder.exemplar("support", trial, inputs, measure, float(size))

    max_support = max(histogram, default=0)
    builder.report.max_support = max_support
    builder.report.support_histogram = {str(k): histogram[k] for k in sorted(histogram)}
    builder.check("support", max_support <= planner.bound, float(max_support), float(planner.bound))
    return builder.finish()


def section_deviation(planner: AnalogPlanner, inputs: Inputs, measure: ProbMeasure) -> float:
    """Largest distance between an atom's value at a prescribed time and the prescribed point."""
    worst = 0.0
    for path, _ in measure:
        for t, point in planner.constraints(inputs):
            worst = max(worst, planner.space.distance(path.at(t), point))
    return worst


def section_audit(planner: AnalogPlanner, config: AuditConfig) -> AuditReport:
    builder = ReportBuilder(planner, config)
    worst = 0.0
    worst_mass = 0.0
    for trial in range(config.samples):
        rng = np.random.default_rng(config.seed + trial)
        inputs = trial_inputs(planner, rng, trial)
        measure = builder.guarded(trial, inputs, lambda: planner.plan(*inputs))
        if measure is None:
            continue
        deviation = builder.guarded(
            trial, inputs, lambda: section_deviation(planner, inputs, measure)
        )
        if deviation is None:
            continue
        worst = max(worst, deviation)
        if deviation > config.section_tolerance:
            builder.exemplar("section", trial, inputs, measure, deviation)
        worst_mass = max(worst_mass, abs(float(measure.mass) - 1.0))

    builder.check("section", worst <= config.section_tolerance, worst, config.section_tolerance)
    builder.check("mass", worst_mass <= config.algebra_tolerance, worst_mass, config.algebra_tolerance)
    return builder.finish()


def perturbed_pair(
    planner: AnalogPlanner, rng: np.random.Generator, h: float, critical: bool
) -> Tuple[Inputs, Inputs]:
    """Inputs and a copy with every coordinate moved by a distance in [h/2, h]."""
    base = planner.critical_inputs(rng) if critical else planner.sample_inputs(rng)
    moved = tuple(
        space.nearby_point(x, h, rng) for space, x in zip(planner.input_spaces, base)
    )
    return base, moved


def ladder_growth(ratios: Sequence[float]) -> List[Optional[float]]:
    """ratio[j] / ratio[j−1]; None on the first rung or when both vanish."""
    growth: List[Optional[float]] = [None]
    for previous, current in zip(ratios, ratios[1:]):
        if previous > 0:
            growth.append(current / previous)
        elif current > 0:
            growth.append(math.inf)
        else:
            growth.append(None)
    return growth


def max_inflation(ratios: Sequence[float]) -> Optional[float]:
    """Largest ratio[j] / ratio[i] over rungs i < j with ratio[i] > 0."""
    values = [
        ratios[j] / ratios[i]
        for i in range(len(ratios))
        for j in range(i + 1, len(ratios))
        if ratios[i] > 0
    ]
    return max(values) if values else None


def continuity_probe(planner: AnalogPlanner, config: AuditConfig) -> AuditReport:
    """
    For each scale h of the ladder, the largest ratio distance(plans) /
    distance(inputs) over `pairs_per_rung` perturbed pairs; half of the
    pairs start on the planner's hand-over locus. Passes iff the ratio grows
    by at most `growth_limit` from one rung to the next.
    """
    builder = ReportBuilder(planner, config)
    spaces = planner.input_spaces
    ratios: List[float] = []
    worst_cases: List[Optional[Tuple[int, Inputs]]] = []
    for rung, h in enumerate(config.ladder):
        worst, worst_case = 0.0, None
        for pair in range(config.pairs_per_rung):
            trial = rung * config.pairs_per_rung + pair
            rng = np.random.default_rng(config.seed + trial)
            base, moved = perturbed_pair(planner, rng, h, critical=bool(pair % 2))

            def ratio_of(base: Inputs = base, moved: Inputs = moved) -> float:
                gap = path_measure_distance(
                    planner.plan(*base), planner.plan(*moved), metric=config.metric
                )
                d = max_coordinate_distance(spaces, base, moved)
                if d > 0:
                    return gap / d
                return 0.0 if gap <= config.algebra_tolerance else math.inf

            ratio = builder.guarded(trial, base, ratio_of)
            if ratio is not None and ratio > worst:
                worst, worst_case = ratio, (trial, base)
        ratios.append(worst)
        worst_cases.append(worst_case)
        logger.debug(f"{planner.name}: rung h={h:g} max ratio {worst:.4g}")

    growth = ladder_growth(ratios)
    builder.report.ladder = [
        LadderRung(h=h, pairs=config.pairs_per_rung, max_ratio=finite(ratio), growth=g)
        for h, ratio, g in zip(
            config.ladder, ratios, (finite(g) if g is not None else None for g in growth)
        )
    ]
    inflation = max_inflation(ratios)
    builder.report.max_inflation = finite(inflation) if inflation is not None else None

    worst_growth, failing = 0.0, None
    for rung, g in enumerate(growth):
        if g is not None and g > worst_growth:
            worst_growth, failing = g, rung
    passed = worst_growth <= config.growth_limit
    if not passed and failing is not None and worst_cases[failing] is not None:
        trial, base = worst_cases[failing]
        builder.exemplar(
            "continuity",
            trial,
            base,
            error=worst_growth,
            message=f"ratio grew {worst_growth:.3g}x at h={config.ladder[failing]:g}",
        )
    builder.check("continuity", passed, worst_growth, config.growth_limit)
    return builder.finish()
