"""
Law Suites
==========
Algebraic invariants of the measure calculus, the transport solver and the
group simplex, checked exhaustively on small exact instances and on seeded
random instances.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from fractions import Fraction
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from audits.engine import finite
from config import MAX_EXEMPLARS
from geometry.covers import AntipodalCover, CircleCover, CoveringMap
from geometry.spaces import Circle, RealProjective
from groups.finite import catalog
from groups.simplex import (
    ShiftModel,
    act,
    classifying_space_bound,
    free_action_probe,
    grid_points,
    skeleton_index,
    torsion_fixed_point_witness,
)
from logger import get_logger
from measures.core import (
    ProbMeasure,
    boxtimes,
    cover_pullback,
    dirac,
    flatten,
    marginals,
    normalize,
    pushforward,
)
from measures.equality import EXACT, MEASURES
from models import AuditConfig, AuditReport, CheckResult, FailureExemplar
from transport.metrics import REAL_LINE, levy_prokhorov, wasserstein1
from transport.oracle import w1_oracle

logger = get_logger(__name__)

LABELS = ("a", "b", "c", "d")
ORACLE_TRIALS = 200
METRIC_TRIPLES = 1000
SHIFT_GRID = 5
SHIFT_WINDOW = 11
ASSOCIATIVITY_LIMIT = 500


class LawLedger:
    """Per-check maximum error and violation exemplars for one law suite."""

    def __init__(self, config: AuditConfig):
        self.config = config
        self.errors: Dict[str, float] = {}
        self.tolerances: Dict[str, float] = {}
        self.exemplars: List[FailureExemplar] = []
        self.details: Dict[str, str] = {}

    def record(
        self, check: str, error: float, tolerance: float, trial: int = 0, **context: Any
    ) -> None:
        self.tolerances.setdefault(check, tolerance)
        self.errors[check] = max(self.errors.get(check, 0.0), float(error))
        if error > tolerance and len(self.exemplars) < MAX_EXEMPLARS:
            self.exemplars.append(
                FailureExemplar(
                    check=check,
                    trial=trial,
                    error=finite(float(error)),
                    inputs={key: str(value) for key, value in context.items()},
                )
            )

    def holds(self, check: str, passed: bool, trial: int = 0, **context: Any) -> None:
        """Record an exact law: error 1 on violation, 0 otherwise."""
        self.record(check, 0.0 if passed else 1.0, 0.0, trial, **context)

    def note(self, check: str, detail: str) -> None:
        self.details[check] = detail

    def report(self) -> AuditReport:
        checks = [
            CheckResult(
                name=name,
                passed=self.errors[name] <= self.tolerances[name],
                max_error=finite(self.errors[name]),
                tolerance=self.tolerances[name],
                detail=self.details.get(name),
            )
            for name in sorted(self.errors)
        ]
        for check in checks:
            if not check.passed:
                logger.warning(f"law '{check.name}' violated (max error {check.max_error})")
        return AuditReport(
            suite=self.config.suite,
            seed=self.config.seed,
            samples=self.config.samples,
            passed=all(check.passed for check in checks),
            checks=checks,
            exemplars=self.exemplars,
        )


# Monad


def discrete_measures(max_atoms: int = 4, max_denominator: int = 6) -> Iterator[ProbMeasure]:
    """Every exact measure on subsets of LABELS with weight denominator ≤ max_denominator."""
    seen = set()
    for n in range(1, max_atoms + 1):
        for q in range(1, max_denominator + 1):
            for mu in grid_points(LABELS[:n], q):
                if mu.atoms not in seen:
                    seen.add(mu.atoms)
                    yield mu


def random_exact_measure(rng: np.random.Generator, atoms: Sequence[Any], q: int = 6) -> ProbMeasure:
    counts = rng.multinomial(q, [1.0 / len(atoms)] * len(atoms))
    return normalize([(a, Fraction(int(c), q)) for a, c in zip(atoms, counts) if c])


def monad_suite(config: AuditConfig) -> AuditReport:
    ledger = LawLedger(config)
    measures = list(discrete_measures())
    for trial, mu in enumerate(measures):
        ledger.holds("left_unit", flatten(dirac(mu, MEASURES), EXACT) == mu, trial, mu=mu)
        ledger.holds(
            "right_unit",
            flatten(pushforward(dirac, mu, MEASURES), EXACT) == mu,
            trial,
            mu=mu,
        )

    maps = list(itertools.product(LABELS[:3], repeat=3))
    small = [mu for mu in measures if set(mu.support) <= set(LABELS[:3])]
    for trial, (f_values, g_values) in enumerate(itertools.product(maps, maps)):
        f = dict(zip(LABELS[:3], f_values)).__getitem__
        g = dict(zip(LABELS[:3], g_values)).__getitem__
        for mu in small[:: max(1, len(small) // 12)]:
            ledger.holds(
                "functoriality",
                pushforward(lambda x: g(f(x)), mu) == pushforward(g, pushforward(f, mu)),
                trial,
                mu=mu,
                f=f_values,
                g=g_values,
            )

    small_base = list(discrete_measures(max_atoms=2, max_denominator=3))
    exhaustive, _ = associativity_triples(small_base, rng=None)
    rng = np.random.default_rng(config.seed)
    level1 = list(discrete_measures())
    sampled, enumerated = associativity_triples(level1, rng)
    for trial, triple in enumerate(exhaustive + sampled):
        left = flatten(flatten(triple, MEASURES), EXACT)
        right = flatten(pushforward(lambda m: flatten(m, EXACT), triple, MEASURES), EXACT)
        ledger.holds("associativity", left == right, trial, measure=triple)
    ledger.note(
        "associativity",
        f"{len(exhaustive)} triples enumerated over {{a, b}}; "
        f"{len(sampled)} triples {'enumerated' if enumerated else 'sampled'} over "
        f"{len(level1)} base measures on {{a, b, c, d}} (seed {config.seed}, "
        f"limit {ASSOCIATIVITY_LIMIT})",
    )

    for trial in range(config.samples):
        rng = np.random.default_rng(config.seed + trial)
        inner = [random_exact_measure(rng, LABELS) for _ in range(int(rng.integers(1, 4)))]
        outer = random_exact_measure(rng, list(range(len(inner))))
        nested = pushforward(lambda i: inner[i], outer, MEASURES)
        flat = flatten(nested, EXACT)
        bound = sum(m.support_size for m in nested.support)
        ledger.holds("flatten_support_bound", flat.support_size <= bound, trial, nested=nested)
        ledger.holds("flatten_mass", flat.mass == 1, trial, nested=nested)
    return ledger.report()


def _grid(atoms: Sequence[Any], q: int) -> Iterator[List[Any]]:
    """Every measure over atoms with weights in (1/q)ℤ."""
    for picks in itertools.combinations_with_replacement(range(len(atoms)), q):
        counts = Counter(picks)
        yield [(atoms[i], Fraction(c, q)) for i, c in sorted(counts.items())]


def mixture_count(n: int, q: int = 2) -> int:
    """How many measures `_grid` yields over n atoms."""
    return math.comb(n + q - 1, q)


def associativity_triples(
    level1: Sequence[ProbMeasure],
    rng: Optional[np.random.Generator],
    limit: int = ASSOCIATIVITY_LIMIT,
) -> Tuple[List[ProbMeasure], bool]:
    """
    Measures on measures on measures: base layer drawn from level1, both
    outer layers with weights in ½ℤ. The whole family is enumerated when it
    has at most `limit` members; otherwise `limit` members are drawn with rng.
    """
    if mixture_count(mixture_count(len(level1))) <= limit:
        level2 = [normalize(xi, MEASURES) for xi in _grid(level1, 2)]
        return [normalize(xi, MEASURES) for xi in _grid(level2, 2)], True
    if rng is None:
        raise ValueError(f"{len(level1)} base measures exceed the enumeration limit {limit}")

    def half_mixture(draw: Callable[[], Any]) -> ProbMeasure:
        half = Fraction(1, 2)
        return normalize([(draw(), half), (draw(), half)], MEASURES)

    def draw_level2() -> ProbMeasure:
        return half_mixture(lambda: level1[int(rng.integers(len(level1)))])

    return [half_mixture(draw_level2) for _ in range(limit)], False


# Transfer and external product


def random_measure(
    rng: np.random.Generator, sample: Callable[[np.random.Generator], Any], equality: Any
) -> ProbMeasure:
    n = int(rng.integers(1, 5))
    weights = rng.dirichlet(np.ones(n))
    return normalize([(sample(rng), float(w)) for w in weights], equality)


def transfer_suite(config: AuditConfig) -> AuditReport:
    ledger = LawLedger(config)
    d = config.d or 2
    covers: List[CoveringMap] = [AntipodalCover(d), CircleCover(3)]
    for trial in range(config.samples):
        rng = np.random.default_rng(config.seed + trial)
        cover = covers[trial % len(covers)]
        mu = random_measure(rng, cover.base.random_point, cover.base)
        lifted = cover_pullback(cover, mu)
        back = pushforward(cover.project, lifted, cover.base)
        ledger.record("section_of_projection", back.weight_gap(mu), 1e-12, trial, mu=mu.to_record())
        ledger.holds(
            "pullback_support_bound",
            lifted.support_size <= cover.degree * mu.support_size,
            trial,
            mu=mu.to_record(),
        )
    return ledger.report()


def boxtimes_suite(config: AuditConfig) -> AuditReport:
    ledger = LawLedger(config)
    first, second = RealProjective(config.d or 2), Circle()
    for trial in range(config.samples):
        rng = np.random.default_rng(config.seed + trial)
        mu = random_measure(rng, first.random_point, first)
        nu = random_measure(rng, second.random_point, second)
        joint = boxtimes(mu, nu)
        left, right = marginals(joint)
        gap = max(left.weight_gap(mu), right.weight_gap(nu))
        ledger.record("retraction", gap, 1e-12, trial, mu=mu.to_record(), nu=nu.to_record())
        ledger.holds(
            "product_support_bound",
            joint.support_size <= mu.support_size * nu.support_size,
            trial,
        )
    return ledger.report()


# Transport


def random_line_measure(rng: np.random.Generator, max_atoms: int = 3) -> ProbMeasure:
    n = int(rng.integers(1, max_atoms + 1))
    points = rng.uniform(0.0, 1.0, n)
    weights = rng.dirichlet(np.ones(n))
    return normalize(zip(points.tolist(), weights.tolist()))


def transport_oracle_suite(config: AuditConfig) -> AuditReport:
    ledger = LawLedger(config)
    tolerance = config.algebra_tolerance
    for trial in range(min(config.samples, ORACLE_TRIALS)):
        rng = np.random.default_rng(config.seed + trial)
        mu, nu = random_line_measure(rng), random_line_measure(rng)
        gap = abs(wasserstein1(mu, nu, REAL_LINE) - w1_oracle(mu, nu, REAL_LINE))
        ledger.record("simplex_vs_oracle", gap, tolerance, trial, mu=mu, nu=nu)

    for trial in range(min(config.samples, METRIC_TRIPLES)):
        rng = np.random.default_rng(config.seed + ORACLE_TRIALS + trial)
        a, b, c = (random_line_measure(rng) for _ in range(3))
        ab, ba = wasserstein1(a, b, REAL_LINE), wasserstein1(b, a, REAL_LINE)
        bc, ac = wasserstein1(b, c, REAL_LINE), wasserstein1(a, c, REAL_LINE)
        ledger.record("w1_symmetry", abs(ab - ba), tolerance, trial)
        ledger.record("w1_triangle", max(0.0, ac - ab - bc), tolerance, trial)
        ledger.record("w1_identity", wasserstein1(a, a, REAL_LINE), tolerance, trial)
        lp = levy_prokhorov(a, b, REAL_LINE)
        ledger.record("lp_below_sqrt_w1", max(0.0, lp - math.sqrt(ab)), tolerance, trial)
        ledger.record("lp_at_most_one", max(0.0, lp - 1.0), tolerance, trial)
    return ledger.report()


# Group simplex


def group_action_suite(config: AuditConfig) -> AuditReport:
    ledger = LawLedger(config)
    for name, group in catalog().items():
        points = [xi for q in range(1, 5) for xi in grid_points(group.labels, q)]
        for trial, xi in enumerate(points):
            for g, h in itertools.product(group.labels, repeat=2):
                ledger.holds(
                    "action_law",
                    act(group, g, act(group, h, xi)) == act(group, group.mul(g, h), xi),
                    trial,
                    group=name,
                    g=g,
                    h=h,
                )
            moved = act(group, group.labels[-1], xi)
            ledger.holds("preserves_skeleton", skeleton_index(moved) == skeleton_index(xi), trial)
            ledger.holds("preserves_mass", moved.mass == xi.mass, trial)
        ledger.holds("identity_acts_trivially", act(group, group.identity, points[-1]) == points[-1])
        for g in group.labels[1:]:
            witness = torsion_fixed_point_witness(group, g)
            ledger.holds("torsion_witness_fixed", act(group, g, witness) == witness, group=name, g=g)
        ledger.holds("finite_group_not_free", not free_action_probe(group, q=4).free, group=name)
        ledger.holds(
            "classifying_space_bound",
            classifying_space_bound(group).bound == group.order - 1,
            group=name,
        )

    probe = free_action_probe(ShiftModel(SHIFT_WINDOW), q=SHIFT_GRID)
    ledger.record("shift_fixed_points", float(len(probe.fixed_points)), 0.0)
    logger.info(f"{probe.model}: {probe.points_checked} grid points, none fixed: {probe.free}")
    return ledger.report()


LAW_SUITES: Dict[str, Callable[[AuditConfig], AuditReport]] = {
    "monad": monad_suite,
    "transfer": transfer_suite,
    "boxtimes": boxtimes_suite,
    "transport-oracle": transport_oracle_suite,
    "group-action": group_action_suite,
}


def law_suite(config: AuditConfig) -> AuditReport:
    return LAW_SUITES[config.suite](config)
