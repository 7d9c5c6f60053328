import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from errors import SupportTooLarge
from geometry.spaces import PATHS, Sphere, sphere_arc
from measures.core import dirac, normalize
from transport.metrics import (
    REAL_LINE,
    GroundMetric,
    levy_prokhorov,
    path_measure_distance,
    transport_plan,
    wasserstein1,
)
from transport.oracle import w1_oracle
from transport.simplex import northwest_corner, solve_transport


@st.composite
def line_measures(draw, max_atoms=3):
    """Measures on at most `max_atoms` distinct points of [0, 1]."""
    points = draw(
        st.lists(
            st.floats(0.0, 1.0, allow_nan=False).map(lambda x: round(x, 6)),
            min_size=1,
            max_size=max_atoms,
            unique=True,
        )
    )
    raw = draw(st.lists(st.floats(0.05, 1.0), min_size=len(points), max_size=len(points)))
    total = math.fsum(raw)
    return normalize([(x, w / total) for x, w in zip(points, raw)])


@pytest.fixture
def two_by_two():
    mu = normalize([(0.0, 0.3), (1.0, 0.7)])
    nu = normalize([(0.0, 0.6), (1.0, 0.4)])
    return mu, nu


def test_w1_two_by_two(two_by_two):
    """Moving 0.3 of mass over distance 1 costs 0.3."""
    mu, nu = two_by_two
    assert wasserstein1(mu, nu, REAL_LINE) == pytest.approx(0.3, abs=1e-12)
    assert w1_oracle(mu, nu, REAL_LINE) == pytest.approx(0.3, abs=1e-12)


def test_w1_trivial_cases():
    mu = normalize([(0.1, 0.5), (0.9, 0.5)])
    assert wasserstein1(mu, mu, REAL_LINE) == pytest.approx(0.0, abs=1e-12)
    assert wasserstein1(dirac(0.0), dirac(2.5), REAL_LINE) == pytest.approx(2.5)
    assert w1_oracle(dirac(0.0), dirac(2.5), REAL_LINE) == pytest.approx(2.5)


def test_transport_plan_marginals(two_by_two):
    mu, nu = two_by_two
    plan = transport_plan(mu, nu, REAL_LINE)
    assert plan.coupling.shape == (2, 2)
    assert plan.marginal_error(mu, nu) <= 1e-12
    assert plan.to_record()["cost"] == pytest.approx(0.3)


def test_northwest_corner_basis_size():
    """The start has m + n − 1 basic cells."""
    flow = northwest_corner([0.5, 0.5], [0.2, 0.3, 0.5])
    assert len(flow) == 4
    assert sum(flow.values()) == pytest.approx(1.0)


def test_solver_handles_degenerate_instances():
    """Equal marginals with a zero-cost diagonal."""
    plan, cost = solve_transport([0.5, 0.5], [0.5, 0.5], np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert cost == pytest.approx(0.0, abs=1e-12)
    assert plan[0, 0] == pytest.approx(0.5)


def test_support_limits():
    wide = normalize([(float(i), 1 / 65) for i in range(65)])
    with pytest.raises(SupportTooLarge):
        wasserstein1(wide, dirac(0.0), REAL_LINE)
    four = normalize([(float(i), 0.25) for i in range(4)])
    with pytest.raises(SupportTooLarge):
        w1_oracle(four, dirac(0.0), REAL_LINE)


def test_levy_prokhorov_examples():
    """Equal measures, nearby and distant diracs, and a far contamination."""
    mu = normalize([(0.0, 0.5), (0.2, 0.5)])
    assert levy_prokhorov(mu, mu, REAL_LINE) == pytest.approx(0.0, abs=1e-12)
    assert levy_prokhorov(dirac(0.0), dirac(0.3), REAL_LINE) == pytest.approx(0.3)
    assert levy_prokhorov(dirac(0.0), dirac(5.0), REAL_LINE) == pytest.approx(1.0)

    contaminated = normalize([(0.0, 0.45), (0.2, 0.45), (10.0, 0.1)])
    assert levy_prokhorov(mu, contaminated, REAL_LINE) == pytest.approx(0.1)


def test_ground_metric_of_space():
    sphere = Sphere(2)
    g = GroundMetric.of(sphere)
    e1, e2, _ = np.eye(3)
    assert g.matrix([e1], [e1, e2]) == pytest.approx(np.array([[0.0, math.pi / 2]]))


def test_path_measure_distance_between_constants():
    """Constant paths at x and y are d(x, y) apart in W1 and LP."""
    sphere = Sphere(2)
    e1, e2, _ = np.eye(3)
    x = e1
    y = math.cos(0.2) * e1 + math.sin(0.2) * e2
    mu = dirac(sphere.constant_path(x), PATHS)
    nu = dirac(sphere.constant_path(y), PATHS)
    assert path_measure_distance(mu, mu) == pytest.approx(0.0, abs=1e-12)
    assert path_measure_distance(mu, nu) == pytest.approx(0.2, abs=1e-9)
    assert path_measure_distance(mu, nu, metric="lp") == pytest.approx(0.2, abs=1e-9)


def test_path_measure_distance_ignores_representation():
    """The same path built twice is at distance 0."""
    sphere = Sphere(2)
    e1, e2, _ = np.eye(3)
    a = dirac(sphere_arc(sphere, e1, e2), PATHS)
    b = dirac(sphere_arc(sphere, e1, e2), PATHS)
    assert path_measure_distance(a, b) == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=80, deadline=None)
@given(line_measures(), line_measures())
def test_simplex_matches_oracle(mu, nu):
    """The simplex optimum equals the best spanning-tree plan."""
    assert wasserstein1(mu, nu, REAL_LINE) == pytest.approx(
        w1_oracle(mu, nu, REAL_LINE), abs=1e-9
    )


@settings(max_examples=60, deadline=None)
@given(line_measures(), line_measures(), line_measures())
def test_metric_axioms(a, b, c):
    """Symmetry, triangle inequality and LP ≤ min(1, √W1)."""
    ab = wasserstein1(a, b, REAL_LINE)
    assert ab == pytest.approx(wasserstein1(b, a, REAL_LINE), abs=1e-9)
    assert wasserstein1(a, c, REAL_LINE) <= ab + wasserstein1(b, c, REAL_LINE) + 1e-9
    lp = levy_prokhorov(a, b, REAL_LINE)
    assert lp <= min(1.0, math.sqrt(ab)) + 1e-9
    assert lp >= 0.0
