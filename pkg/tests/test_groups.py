from fractions import Fraction
from math import comb

import pytest

from config import CONFIGS_DIR
from errors import GroupError, GroupTableError, InfiniteOrder
from groups.finite import (
    catalog,
    cyclic,
    dihedral,
    format_table,
    load_table,
    parse_table,
    quaternion,
    trivial_group,
)
from groups.simplex import (
    ShiftModel,
    act,
    classifying_space_bound,
    free_action_probe,
    grid_points,
    skeleton_index,
    torsion_fixed_point_witness,
)
from measures.core import dirac, uniform


@pytest.fixture(scope="module")
def groups():
    return catalog()


def test_catalog_orders(groups):
    """C2…C8, D3, D4 and Q8 with the expected orders."""
    orders = {name: group.order for name, group in groups.items()}
    assert orders == {
        "C2": 2, "C3": 3, "C4": 4, "C5": 5, "C6": 6, "C7": 7, "C8": 8,
        "D3": 6, "D4": 8, "Q8": 8,
    }  # fmt: skip


def test_dihedral_relation():
    """s r s = r⁻¹."""
    d4 = dihedral(4)
    assert d4.mul(d4.mul("s0", "r1"), "s0") == d4.inverse("r1") == "r3"


def test_quaternion_relations():
    q8 = quaternion()
    assert q8.mul("i", "j") == "k"
    assert q8.mul("j", "i") == "-k"
    assert q8.element_order("i") == 4
    assert q8.element_order("-1") == 2


def test_c2_witness():
    """σ fixes the midpoint of the edge {e, σ}."""
    c2 = cyclic(2)
    witness = torsion_fixed_point_witness(c2, "g1")
    assert witness == uniform(["e", "g1"])
    assert act(c2, "g1", witness) == witness


def test_c3_witness():
    c3 = cyclic(3)
    witness = torsion_fixed_point_witness(c3, "g1")
    assert witness.weights == [Fraction(1, 3)] * 3
    assert act(c3, "g1", witness) == witness


def test_q8_order_four_witness():
    q8 = quaternion()
    witness = torsion_fixed_point_witness(q8, "i")
    assert witness.support_size == 4
    assert act(q8, "i", witness) == witness


def test_every_nontrivial_element_has_a_fixed_witness(groups):
    for group in groups.values():
        for g in group.labels[1:]:
            witness = torsion_fixed_point_witness(group, g)
            assert act(group, g, witness) == witness


def test_identity_has_no_witness():
    with pytest.raises(GroupError):
        torsion_fixed_point_witness(cyclic(3), "e")


def test_free_action_probe_on_finite_groups(groups):
    """The trivial group acts freely; no other finite group does."""
    assert free_action_probe(trivial_group()).free
    for group in groups.values():
        assert not free_action_probe(group, q=3).free


def test_shift_model_has_no_fixed_points():
    """ℤ on a window of 11 with q = 5: all C(13, 8) interior grid points are moved."""
    probe = free_action_probe(ShiftModel(11), q=5)
    assert probe.free
    assert probe.points_checked == comb(5 + 9 - 1, 9 - 1)


def test_shift_model_probe_limits():
    with pytest.raises(GroupError):
        free_action_probe(ShiftModel(11), q=7)
    with pytest.raises(GroupError):
        free_action_probe(ShiftModel(20), q=2)
    with pytest.raises(InfiniteOrder):
        ShiftModel(11).torsion_fixed_point_witness(1)


def test_skeleton_index():
    d4 = dihedral(4)
    point = uniform(["e", "r1", "s2"])
    assert skeleton_index(dirac("e")) == 0
    assert skeleton_index(point) == 2
    assert skeleton_index(act(d4, "s1", point)) == 2


def test_grid_points_cover_the_simplex():
    """Weights are multiples of 1/q and every point has mass one."""
    points = list(grid_points(["a", "b", "c"], 2))
    assert len(points) == 6
    assert all(point.mass == 1 for point in points)


def test_classifying_space_bound():
    bound = classifying_space_bound(cyclic(4))
    assert bound.bound == 3
    assert bound.point.support_size == 4


def test_load_shipped_table():
    """configs/q8.table is the catalog's Q8."""
    loaded = load_table(CONFIGS_DIR / "q8.table")
    q8 = quaternion()
    assert loaded.labels == q8.labels
    assert loaded.table == q8.table


def test_format_and_parse_table():
    d3 = dihedral(3)
    assert parse_table(format_table(d3), "D3").table == d3.table


def test_parse_table_with_row_labels():
    """Both layouts give the same group; a wrong row label is rejected."""
    plain = parse_table("e a\na e", "C2")
    labelled = parse_table("e e a\na a e", "C2")
    assert labelled.labels == plain.labels == ("e", "a")
    assert labelled.table == plain.table
    with pytest.raises(GroupTableError):
        parse_table("e e a\nb a e")


def test_bad_tables_are_rejected():
    with pytest.raises(GroupTableError):
        parse_table("")
    with pytest.raises(GroupTableError):
        parse_table("e a\nb e")
    with pytest.raises(GroupTableError):
        parse_table("e a\na x")
    # closed and unital, but a·a = a has no inverse for a
    with pytest.raises(GroupTableError):
        parse_table("e a\na a")
