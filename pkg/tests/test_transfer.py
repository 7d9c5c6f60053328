import numpy as np
import pytest

from audits.engine import section_deviation
from errors import BasepointMismatch, EquivarianceViolation
from geometry.covers import AntipodalCover, IdentityCover
from geometry.paths import concat
from geometry.spaces import PATHS, Circle, Sphere, sphere_arc
from measures.core import dirac
from planners.base import AnalogPlanner
from planners.circle import CircleTCPlanner
from planners.spheres import SphereAcatPlanner, SphereTCPlanner
from planners.transfer import CoverTransfer, EquivariantTransfer, GenericTransfer
from transport.metrics import path_measure_distance


class ViaWaypoint(AnalogPlanner):
    """x → e1 → y: not symmetric under x ↦ −x."""

    def __init__(self):
        super().__init__("via_waypoint", Sphere(2), arity=2, bound=1)
        self.waypoint = np.eye(3)[0]

    def _plan(self, points):
        x, y = points
        path = concat(sphere_arc(self.space, x, self.waypoint), sphere_arc(self.space, self.waypoint, y))
        return dirac(path, PATHS)


@pytest.fixture(scope="module")
def rp_acat_transfer():
    return CoverTransfer(AntipodalCover(2), SphereAcatPlanner(2))


def test_cover_transfer_bound_and_section(rp_acat_transfer, rng):
    """S² → ℝP² doubles the support bound and keeps the section property."""
    planner = rp_acat_transfer
    assert planner.bound == 4
    for trial in range(40):
        (y,) = planner.critical_inputs(rng) if trial % 4 == 3 else planner.sample_inputs(rng)
        plan = planner.plan(y)
        assert plan.support_size <= 4
        assert section_deviation(planner, (y,), plan) <= 1e-7


def test_cover_transfer_of_single_atoms(rp_acat_transfer):
    """If every lift plans a single path, the result is uniform over them."""
    plan = rp_acat_transfer.plan(np.eye(3)[0])
    assert plan.support_size == 2
    assert [float(w) for w in plan.weights] == pytest.approx([0.5, 0.5])


def test_cover_transfer_checks_basepoint():
    with pytest.raises(BasepointMismatch):
        CoverTransfer(AntipodalCover(2), SphereAcatPlanner(2), basepoint=np.eye(3)[1])


def test_identity_cover_transfer_is_unchanged(rng):
    inner = SphereAcatPlanner(2)
    planner = CoverTransfer(IdentityCover(Sphere(2)), inner)
    assert planner.bound == inner.bound
    y = inner.space.random_point(rng)
    assert path_measure_distance(planner.plan(y), inner.plan(y)) <= 1e-9


def test_equivariant_transfer_is_lift_invariant(rng):
    """Flipping either lift leaves the transferred plan unchanged."""
    planner = EquivariantTransfer(AntipodalCover(3), SphereTCPlanner(3))
    assert planner.bound == 4
    assert planner.certificate <= 1e-7
    for _ in range(10):
        u = planner.inner.space.random_point(rng)
        v = planner.inner.space.random_point(rng)
        reference = planner.plan_with_lifts(u, v)
        assert reference.support_size <= 4
        for first, second in ((-u, v), (u, -v), (-u, -v)):
            assert path_measure_distance(reference, planner.plan_with_lifts(first, second)) <= 1e-9


def test_equivariant_transfer_even_sphere(rng):
    """d = 2: bound 2·3 = 6, and equal inputs give loops at x."""
    planner = EquivariantTransfer(AntipodalCover(2), SphereTCPlanner(2))
    assert planner.bound == 6
    x = planner.space.random_point(rng)
    plan = planner.plan(x, x)
    assert plan.support_size <= 6
    assert section_deviation(planner, (x, x), plan) <= 1e-7
    for _ in range(20):
        points = planner.sample_inputs(rng)
        assert section_deviation(planner, points, planner.plan(*points)) <= 1e-7


def test_equivariance_is_certified():
    with pytest.raises(EquivarianceViolation):
        EquivariantTransfer(AntipodalCover(2), ViaWaypoint())


def test_generic_transfer(rng):
    """Coordinate-wise lifts: bound kʳ·n; the identity cover changes nothing."""
    planner = GenericTransfer(AntipodalCover(3), SphereTCPlanner(3))
    assert planner.bound == 8
    points = planner.sample_inputs(rng)
    plan = planner.plan(*points)
    assert plan.support_size <= 8
    assert section_deviation(planner, points, plan) <= 1e-7

    inner = CircleTCPlanner()
    same = GenericTransfer(IdentityCover(Circle()), inner)
    assert path_measure_distance(same.plan(0.5, 2.0), inner.plan(0.5, 2.0)) <= 1e-9
