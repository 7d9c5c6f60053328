from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from errors import NegativeWeight, NotNormalized
from geometry.covers import AntipodalCover, IdentityCover
from geometry.paths import arc
from geometry.spaces import Circle, RealProjective, Sphere
from measures.core import (
    RelativeConstraint,
    add,
    boxtimes,
    check_relative,
    cover_pullback,
    dirac,
    finite_measure,
    flatten,
    marginals,
    normalize,
    pushforward,
    uniform,
)
from measures.equality import EXACT, MEASURES, TupleEquality

LABELS = ["a", "b", "c", "d"]


@st.composite
def exact_measures(draw, labels=LABELS, denominator=6):
    """Exact measures on a subset of `labels` with weights in (1/denominator)ℤ."""
    n = draw(st.integers(min_value=1, max_value=len(labels)))
    atoms = draw(st.permutations(labels))[:n]
    cuts = sorted(draw(st.lists(st.integers(0, denominator), min_size=n - 1, max_size=n - 1)))
    bounds = [0] + cuts + [denominator]
    return normalize(
        [(atom, Fraction(hi - lo, denominator)) for atom, lo, hi in zip(atoms, bounds, bounds[1:])]
    )


def test_normalize_merges_equal_atoms():
    """Repeated atoms are merged into one."""
    mu = normalize([("a", 0.5), ("a", 0.25), ("b", 0.25)])
    assert mu.support == ["a", "b"]
    assert mu.weight_of("a") == pytest.approx(0.75)
    assert mu.weight_of("b") == pytest.approx(0.25)


def test_normalize_drops_zero_weights():
    """Zero-weight atoms leave the support."""
    mu = normalize([("a", 1.0), ("b", 0.0)])
    assert mu.support == ["a"]


def test_normalize_rejects_bad_mass():
    """Weights must sum to one."""
    with pytest.raises(NotNormalized):
        normalize([("a", 0.2), ("b", 0.3)])


def test_normalize_rejects_negative_weight():
    """Negative weights are an error, not a cancellation."""
    with pytest.raises(NegativeWeight):
        normalize([("a", 1.5), ("b", -0.5)])


def test_atom_order_is_canonical():
    """Input order does not matter."""
    first = normalize([("b", Fraction(1, 3)), ("a", Fraction(2, 3))])
    second = normalize([("a", Fraction(2, 3)), ("b", Fraction(1, 3))])
    assert first.atoms == second.atoms


def test_dirac_is_in_lowest_terms():
    """dirac(x) is already normalized."""
    mu = dirac("a")
    assert mu.atoms == (("a", 1),)
    assert normalize(mu.atoms) == mu


def test_pushforward_examples():
    """Constant maps, the identity and merging maps."""
    mu = normalize([("a", Fraction(1, 2)), ("b", Fraction(1, 2))])
    assert pushforward(lambda x: "c", mu) == dirac("c")
    assert pushforward(lambda x: x, mu) == mu
    merged = pushforward(lambda x: "x", mu)
    assert merged.support == ["x"]
    assert merged.weight_of("x") == 1


def test_flatten_multiplies_weights():
    """κ(½δ_{δa} + ½δ_{½a+½b}) = ¾a + ¼b."""
    nested = normalize(
        [(dirac("a"), Fraction(1, 2)), (uniform(["a", "b"]), Fraction(1, 2))], MEASURES
    )
    assert flatten(nested, EXACT) == normalize([("a", Fraction(3, 4)), ("b", Fraction(1, 4))])


def test_boxtimes_and_marginals():
    """Marginals retract the external product."""
    mu = uniform(["a", "b"])
    nu = normalize([("x", Fraction(1, 3)), ("y", Fraction(2, 3))])
    joint = boxtimes(mu, nu)
    assert joint.support_size == 4
    assert joint.weight_of(("a", "y")) == Fraction(1, 3)
    left, right = marginals(joint)
    assert left == mu
    assert right == nu


def test_cover_pullback_antipodal():
    """p*(δ_[e1]) = ½δ_e1 + ½δ_−e1."""
    cover = AntipodalCover(2)
    e1 = np.array([1.0, 0.0, 0.0])
    lifted = cover_pullback(cover, dirac(e1, cover.base))
    assert lifted.support_size == 2
    assert lifted.weight_of(e1) == Fraction(1, 2)
    assert lifted.weight_of(-e1) == Fraction(1, 2)


def test_cover_pullback_identity_cover():
    """The degree-one cover leaves measures unchanged."""
    circle = Circle()
    mu = normalize([(0.5, 0.25), (1.0, 0.75)], circle)
    assert cover_pullback(IdentityCover(circle), mu) == mu


def test_cover_pullback_is_a_section_of_projection():
    """p_* p* = id on the antipodal cover."""
    cover = AntipodalCover(3)
    rng = np.random.default_rng(3)
    mu = normalize([(cover.base.random_point(rng), 0.4), (cover.base.random_point(rng), 0.6)], cover.base)
    back = pushforward(cover.project, cover_pullback(cover, mu), cover.base)
    assert back.weight_gap(mu) <= 1e-12


def test_add_and_mass_of():
    """Masses add; mass_of sums over a predicate."""
    total = add(uniform(["a", "b"]), dirac("a"))
    assert total.mass == 2
    assert total.weight_of("a") == Fraction(3, 2)
    assert total.mass_of(lambda x: x == "b") == Fraction(1, 2)
    assert finite_measure([("a", 2)]).mass == 2


def test_check_relative():
    """Single atoms always pass; endpoint tuples must agree."""
    sphere = Sphere(2)
    e1, e2, e3 = np.eye(3)
    endpoints = RelativeConstraint(
        map=lambda path: (path.start, path.end), target=TupleEquality((sphere, sphere))
    )
    upper = arc(sphere, e1, e2, np.pi)
    lower = arc(sphere, e1, e3, np.pi)
    assert check_relative(dirac(upper), endpoints)
    assert check_relative(uniform([upper, lower]), endpoints)

    near = arc(sphere, e1, e2, np.pi / 2)
    off = arc(sphere, e1, e2, np.pi / 2 + 1e-3)
    assert not check_relative(uniform([near, off]), endpoints)


def test_measures_on_projective_space_merge_antipodes():
    """[u] and [−u] are one atom of ℝPᵈ."""
    rp = RealProjective(2)
    u = rp.canonical(np.array([0.3, -0.4, 0.5]))
    mu = normalize([(u, 0.5), (rp.canonical(-u), 0.5)], rp)
    assert mu.support_size == 1


@settings(max_examples=60, deadline=None)
@given(exact_measures())
def test_unit_laws(mu):
    """κ∘δ = id and κ∘map(δ) = id."""
    assert flatten(dirac(mu, MEASURES), EXACT) == mu
    assert flatten(pushforward(dirac, mu, MEASURES), EXACT) == mu


@settings(max_examples=60, deadline=None)
@given(exact_measures(), st.sampled_from(LABELS), st.sampled_from(LABELS))
def test_pushforward_is_functorial(mu, fa, fb):
    """(g∘f)_* = g_* f_*."""
    f = {"a": fa, "b": fb, "c": fa, "d": "d"}.__getitem__
    g = {"a": "b", "b": "b", "c": "a", "d": "c"}.__getitem__
    assert pushforward(lambda x: g(f(x)), mu) == pushforward(g, pushforward(f, mu))


@settings(max_examples=40, deadline=None)
@given(exact_measures(), exact_measures(labels=["x", "y", "z"]))
def test_boxtimes_support_bound(mu, nu):
    """|supp(μ ⊠ ν)| = |supp μ|·|supp ν| and mass stays exact."""
    joint = boxtimes(mu, nu)
    assert joint.support_size == mu.support_size * nu.support_size
    assert joint.mass == 1
