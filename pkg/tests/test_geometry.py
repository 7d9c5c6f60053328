import logging
import math

import numpy as np
import pytest

from errors import EndpointMismatch, FiberSizeMismatch, NoGeodesic, OutOfDomain
from geometry.covers import AntipodalCover, CircleCover, ProductCover, deck_orbit, fiber
from geometry.paths import arc, concat, concat_legs, eval_path, restrict, reverse, sup_distance
from geometry.spaces import (
    PATHS,
    Circle,
    Discrete,
    RealProjective,
    Sphere,
    geodesics,
    max_coordinate_distance,
    sphere_arc,
    torus,
)

E1, E2, E3 = np.eye(3)


def test_sphere_geodesic_to_itself_is_constant():
    """x = y gives one constant path of length 0."""
    (path, length), = geodesics(Sphere(2), E1, E1)
    assert length == 0.0
    assert np.allclose(path.at(0.5), E1)


def test_sphere_antipodal_geodesics():
    """Antipodal points have two half circles."""
    candidates = geodesics(Sphere(2), E1, -E1)
    assert len(candidates) == 2
    for path, length in candidates:
        assert length == pytest.approx(math.pi)
        assert np.allclose(path.end, -E1)


def test_projective_geodesics_at_right_angle():
    """[e1], [e2] are joined by two paths of equal length π/2."""
    candidates = geodesics(RealProjective(2), E1, E2)
    assert [length for _, length in candidates] == pytest.approx([math.pi / 2, math.pi / 2])


def test_projective_geodesics_shortest_first():
    """The shorter lift comes first."""
    rp = RealProjective(2)
    v = rp.canonical(np.array([1.0, 1.0, 0.0]))
    (near, near_length), (far, far_length) = geodesics(rp, E1, v)
    assert near_length == pytest.approx(math.pi / 4)
    assert far_length == pytest.approx(3 * math.pi / 4)
    assert rp.same(near.end, v) and rp.same(far.end, v)


def test_circle_geodesics():
    """A gap of π/3 gives arcs of length π/3 and 5π/3."""
    candidates = geodesics(Circle(), 0.0, math.pi / 3)
    assert [length for _, length in candidates] == pytest.approx([math.pi / 3, 5 * math.pi / 3])


def test_discrete_space_has_no_geodesics():
    with pytest.raises(NoGeodesic):
        geodesics(Discrete(("a", "b")), "a", "b")


def test_eval_path_endpoints_and_midpoint():
    """Evaluation at 0, ½ and 1 of a quarter arc."""
    circle = Sphere(1)
    path = sphere_arc(circle, np.array([1.0, 0.0]), np.array([0.0, 1.0]))
    assert np.allclose(eval_path(path, 0.0), [1.0, 0.0])
    assert np.allclose(eval_path(path, 1.0), [0.0, 1.0])
    assert np.allclose(eval_path(path, 0.5), [math.cos(math.pi / 4), math.sin(math.pi / 4)])
    assert Circle().sweep(0.0, math.pi / 4).at(0.5) == pytest.approx(math.pi / 8)


def test_eval_outside_unit_interval():
    with pytest.raises(OutOfDomain):
        sphere_arc(Sphere(2), E1, E2).at(1.5)


def test_concat_two_quarter_arcs():
    """Spans are proportional to arclength, so the junction sits at t = ½."""
    sphere = Sphere(2)
    half = concat(sphere_arc(sphere, E1, E2), sphere_arc(sphere, E2, -E1))
    assert half.length == pytest.approx(math.pi)
    assert np.allclose(half.at(0.5), E2)
    assert np.allclose(half.end, -E1)


def test_concat_rejects_gaps():
    sphere = Sphere(2)
    moved = math.cos(1e-3) * E2 + math.sin(1e-3) * E3
    with pytest.raises(EndpointMismatch):
        concat(sphere_arc(sphere, E1, E2), sphere_arc(sphere, moved, -E1))


def test_concat_legs_uses_equal_spans():
    """Leg i starts at i/len(legs) whatever the lengths."""
    sphere = Sphere(2)
    short = sphere_arc(sphere, E1, (E1 + E2) / math.sqrt(2))
    long = sphere_arc(sphere, (E1 + E2) / math.sqrt(2), -E1)
    path = concat_legs([short, long])
    assert np.allclose(path.at(0.5), (E1 + E2) / math.sqrt(2))


def test_path_equality_compares_segments():
    """Matching segment data is the same atom; distinct arcs are not."""
    sphere = Sphere(2)
    a = sphere_arc(sphere, E1, E2)
    b = arc(sphere, E1, E2, math.pi / 2)
    assert PATHS.same(a, b)
    assert sup_distance(a, b) == pytest.approx(0.0, abs=1e-12)
    assert not PATHS.same(a, sphere_arc(sphere, E1, E3))


def test_path_equality_sees_between_grid_points():
    """Two circle arcs that agree at every t = k/16 are still different paths."""
    circle = Circle()
    u, tangent = circle.vector(0.0), np.array([0.0, 1.0])
    short = arc(circle, u, tangent, math.pi / 2)
    winding = arc(circle, u, tangent, math.pi / 2 + 32 * math.pi)
    assert sup_distance(short, winding, 17) == pytest.approx(0.0, abs=1e-9)
    assert not PATHS.same(short, winding)


def test_path_equality_ignores_the_sign_of_projective_lifts():
    rp, sphere = RealProjective(2), Sphere(2)
    assert PATHS.same(arc(rp, E1, E2, 0.3), arc(rp, -E1, -E2, 0.3))
    assert not PATHS.same(arc(sphere, E1, E2, 0.3), arc(sphere, -E1, -E2, 0.3))
    assert not PATHS.same(arc(rp, E1, E2, 0.3), arc(rp, E1, -E2, 0.3))
    pair = torus(2)
    first = pair.pair(Circle().sweep(0.0, 1.0), Circle().sweep(1.0, 2.0))
    assert PATHS.same(first, pair.pair(Circle().sweep(0.0, 1.0), Circle().sweep(1.0, 2.0)))
    assert not PATHS.same(first, pair.pair(Circle().sweep(0.0, 1.0), Circle().sweep(1.0, 2.5)))


def test_project_path_to_projective_space():
    """An arc u → v projects to a path [u] → [v]; a half circle to a loop."""
    cover = AntipodalCover(2)
    v = np.array([0.0, 0.6, 0.8])
    projected = cover.project_path(sphere_arc(cover.total, E1, v))
    assert cover.base.same(projected.start, E1)
    assert cover.base.same(projected.end, v)

    loop = cover.project_path(arc(cover.total, E1, E2, math.pi))
    assert cover.base.same(loop.start, loop.end)
    assert loop.length == pytest.approx(math.pi)


def test_antipodal_fiber():
    assert np.allclose(np.array(fiber(AntipodalCover(2), E1)), [E1, -E1])


def test_circle_cover_fiber_and_loop():
    """z ↦ z³ has fiber {0, 2π/3, 4π/3} over 0 and closes a third of a turn."""
    cover = CircleCover(3)
    assert fiber(cover, 0.0) == pytest.approx([0.0, 2 * math.pi / 3, 4 * math.pi / 3])
    loop = cover.project_path(cover.total.sweep(0.0, 2 * math.pi / 3))
    assert cover.base.distance(loop.end, 0.0) == pytest.approx(0.0, abs=1e-9)
    assert loop.length == pytest.approx(2 * math.pi)


def test_deck_orbit_is_the_fiber():
    cover = ProductCover(AntipodalCover(1), CircleCover(2))
    x = (np.array([0.6, 0.8]), 1.0)
    orbit = deck_orbit(cover, x)
    lifts = fiber(cover, cover.project(x))
    assert len(orbit) == len(lifts) == 4
    for point in orbit:
        assert any(cover.total.same(point, lift) for lift in lifts)


def test_fiber_size_is_checked(caplog):
    class Broken(CircleCover):
        def fiber(self, x):
            return [0.0, 0.0, 0.0]

    with caplog.at_level(logging.ERROR), pytest.raises(FiberSizeMismatch):
        fiber(Broken(3), 0.0)
    assert "1 distinct points, expected 3" in caplog.text


def test_nearby_point_distance(rng):
    """Perturbations land at distance in [h/2, h]."""
    spaces = [Sphere(3), RealProjective(2), Circle(), torus(2)]
    for space in spaces:
        for h in (1e-1, 1e-3):
            x = space.random_point(rng)
            y = space.nearby_point(x, h, rng)
            assert h / 2 - 1e-12 <= space.distance(x, y) <= h + 1e-12


def test_max_coordinate_distance():
    circle = Circle()
    assert max_coordinate_distance([circle, circle], (0.0, 1.0), (0.5, 1.1)) == pytest.approx(0.5)


def test_torus_distance_is_euclidean():
    t2 = torus(2)
    assert t2.distance((0.0, 0.0), (0.3, 0.4)) == pytest.approx(0.5)


GEODESIC_SPACES = [
    Sphere(1),
    Sphere(2),
    Sphere(5),
    RealProjective(2),
    RealProjective(3),
    Circle(),
    torus(3),
]
STEPS = 64


@pytest.mark.parametrize("space", GEODESIC_SPACES, ids=lambda space: space.name)
def test_geodesics_run_at_constant_speed_between_the_endpoints(space, rng):
    """Consecutive grid steps all cover length/64, including the long RP arc."""
    for _ in range(10):
        x, y = space.random_point(rng), space.random_point(rng)
        for path, length in geodesics(space, x, y):
            assert space.same(path.start, x)
            assert space.same(path.end, y)
            assert path.length == pytest.approx(length)
            points = [path.at(t) for t in np.linspace(0.0, 1.0, STEPS + 1)]
            steps = [space.distance(a, b) for a, b in zip(points, points[1:])]
            assert steps == pytest.approx([length / STEPS] * STEPS, abs=1e-9)


@pytest.mark.parametrize(
    "space", GEODESIC_SPACES + [Discrete(("a", "b", "c"))], ids=lambda space: space.name
)
def test_distance_is_a_metric_on_random_triples(space, rng):
    for _ in range(200):
        x, y, z = (space.random_point(rng) for _ in range(3))
        assert space.distance(x, x) == pytest.approx(0.0, abs=1e-12)
        assert space.distance(x, y) == pytest.approx(space.distance(y, x), abs=1e-12)
        assert space.distance(x, z) <= space.distance(x, y) + space.distance(y, z) + 1e-12


@pytest.mark.parametrize(
    "cover",
    [AntipodalCover(2), CircleCover(3), ProductCover(AntipodalCover(1), CircleCover(2))],
    ids=repr,
)
def test_project_path_commutes_with_evaluation(cover, rng):
    """p(γ(t)) = (p∘γ)(t) on a 64-point grid."""
    for _ in range(10):
        x, y = cover.total.random_point(rng), cover.total.random_point(rng)
        for path, _ in geodesics(cover.total, x, y):
            projected = cover.project_path(path)
            for t in np.linspace(0.0, 1.0, STEPS):
                expected = cover.project(eval_path(path, t))
                assert cover.base.distance(eval_path(projected, t), expected) <= 1e-9


def test_reverse_runs_backwards():
    sphere = Sphere(2)
    path = concat(sphere_arc(sphere, E1, E2), sphere_arc(sphere, E2, E3))
    back = reverse(path)
    for t in np.linspace(0.0, 1.0, 9):
        assert np.allclose(back.at(t), path.at(1.0 - t))
    assert back.length == pytest.approx(path.length)


def test_restrict_stretches_a_piece_over_the_unit_interval():
    """The middle half of two joined quarter arcs straddles the junction."""
    sphere = Sphere(2)
    path = concat(sphere_arc(sphere, E1, E2), sphere_arc(sphere, E2, E3))
    middle = restrict(path, 0.25, 0.75)
    for s in np.linspace(0.0, 1.0, 9):
        assert np.allclose(middle.at(s), path.at(0.25 + 0.5 * s))
    assert middle.length == pytest.approx(path.length / 2)
    assert len(middle.segments) == 2
    with pytest.raises(OutOfDomain):
        restrict(path, 0.5, 0.5)
