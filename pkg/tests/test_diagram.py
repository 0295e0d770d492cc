import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cgrefine.diagram import (
    LinkDiagram,
    canonical_key,
    diagram_for_cycle,
    diagram_for_pair,
    from_gauss,
    seifert_circles,
    seifert_matrix,
    smooth_crossing,
    switch_crossing,
    to_gauss,
)
from cgrefine.geometry import generic_projection, moment_curve_embedding, random_rectilinear
from cgrefine.graphs import Cycle, complete_graph, cycles_of_length, disjoint_cycle_pairs
from cgrefine.invariants import conway_a2, int_det, linking_number

from conftest import random_knot_diagram, random_link_diagram

TREFOIL = "O1+ U2+ O3+ U1+ O2+ U3+"
FIGURE_EIGHT = "O1- U2- O3+ U4+ O2- U1- O4+ U3+"
HOPF = "O1+ U2+\nU1+ O2+"


def sym(V):
    return [[V[i][j] + V[j][i] for j in range(len(V))] for i in range(len(V))]


def test_gauss_round_trip():
    for text in (TREFOIL, FIGURE_EIGHT, HOPF):
        assert to_gauss(from_gauss(text)) == text
    assert from_gauss("") == LinkDiagram(((),))
    assert len(from_gauss("O1+ U1+\n")) == 2
    with pytest.raises(ValueError):
        from_gauss("X1+ U1+")
    with pytest.raises(ValueError):
        from_gauss("O1+ O1+")
    with pytest.raises(ValueError):
        from_gauss("O1+ U1-")


def test_canonical_key_ignores_rotation_and_labels():
    a = from_gauss(TREFOIL)
    # relabeled and started two visits later
    b = LinkDiagram((((9, True, 1), (7, False, 1), (4, True, 1), (9, False, 1), (7, True, 1), (4, False, 1)),))
    assert canonical_key(a) == canonical_key(b)
    assert canonical_key(a) != canonical_key(a.mirror())


def test_seifert_matrices_of_standard_knots():
    V = seifert_matrix(from_gauss(TREFOIL))
    assert V == [[-1, -1], [0, -1]]
    assert abs(int_det(sym(V))) == 3
    V = seifert_matrix(from_gauss(FIGURE_EIGHT))
    assert V == [[1, -1], [0, -1]]
    assert abs(int_det(sym(V))) == 5
    assert seifert_matrix(LinkDiagram(((),))) == []


def test_seifert_circle_count():
    assert len(seifert_circles(from_gauss(TREFOIL)).circles) == 2
    assert len(seifert_circles(from_gauss(FIGURE_EIGHT)).circles) == 3


def test_switch_is_an_involution():
    d = from_gauss(FIGURE_EIGHT)
    for c in d.crossing_ids:
        s = switch_crossing(d, c)
        assert s.crossing_count == d.crossing_count
        assert switch_crossing(s, c) == d
    with pytest.raises(ValueError):
        switch_crossing(d, 99)


def test_trefoil_switch_unknots():
    d = from_gauss(TREFOIL)
    for c in d.crossing_ids:
        assert conway_a2(switch_crossing(d, c)) == 0


def test_smoothing_changes_components():
    d = from_gauss(TREFOIL)
    s = smooth_crossing(d, 1)
    assert len(s) == 2 and s.crossing_count == 2
    h = from_gauss(HOPF)
    s = smooth_crossing(h, 1)
    assert len(s) == 1 and s.crossing_count == 1
    with pytest.raises(ValueError):
        smooth_crossing(h, 5)


def test_triangles_have_no_self_crossings():
    e = random_rectilinear(7, 4)
    p = generic_projection(e, 0)
    for c in cycles_of_length(e.graph, 3):
        assert diagram_for_cycle(p, c).crossing_count == 0


def test_short_rectilinear_cycles_are_unknotted():
    e = random_rectilinear(7, 9)
    p = generic_projection(e, 1)
    for k in (4, 5):
        assert all(conway_a2(diagram_for_cycle(p, c)) == 0 for c in cycles_of_length(e.graph, k))


def test_pair_diagrams():
    e = moment_curve_embedding(6)
    p = generic_projection(e, 0)
    lks = []
    for pair in disjoint_cycle_pairs(e.graph, 3, 3):
        d = diagram_for_pair(p, pair)
        assert len(d) == 2 and len(d.inter_crossings()) % 2 == 0
        lks.append(linking_number(d))
        assert linking_number(d.reversed_component(1)) == -lks[-1]
    assert sorted(abs(x) for x in lks) == [0] * 9 + [1]
    with pytest.raises(ValueError):
        diagram_for_pair(p, (Cycle((1, 2, 3)), Cycle((3, 4, 5))))


def test_cycle_must_live_in_graph():
    e = random_rectilinear(complete_graph(5), 1)
    with pytest.raises(ValueError):
        diagram_for_cycle(generic_projection(e, 0), (1, 2, 6))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_each_crossing_visited_twice(seed):
    d = random_knot_diagram(seed)
    for c in d.crossing_ids:
        assert len(d.locate(c)) == 2
    assert canonical_key(from_gauss(to_gauss(d))) == canonical_key(d)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_seifert_form_is_unimodular(seed):
    # V - V^T is the intersection form of a closed surface with one boundary
    d = random_knot_diagram(seed)
    V = seifert_matrix(d)
    n = len(V)
    assert n % 2 == 0
    assert n == d.crossing_count - len(seifert_circles(d).circles) + 1
    if n:
        assert int_det([[V[i][j] - V[j][i] for j in range(n)] for i in range(n)]) == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_link_inter_crossings_even(seed):
    d = random_link_diagram(seed)
    assert len(d.inter_crossings()) % 2 == 0
    assert linking_number(d.mirror()) == -linking_number(d)
