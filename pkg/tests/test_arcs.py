"""Arcs, ovals, tangent counting, and the exhaustive search."""

import itertools

import pytest

from galoisplane.arcs import Arc, is_arc, search_maximal_arcs, tangent_lines
from galoisplane.conic import parse_conic
from galoisplane.errors import (
    BoundExceeded,
    Degenerate,
    EqualPoints,
    PointNotOnArc,
)
from galoisplane.gf import make_field
from galoisplane.pg2 import canonicalize, collinear, incident, point_sort_key


def _oval(spec):
    return parse_conic(spec, "[1:0:0:0:0:-1]").variety()


def _pt(spec, *codes):
    return canonicalize(tuple(spec.from_int(c) for c in codes))


def test_is_arc_on_conic_points():
    spec = make_field(7)
    ok, witness = is_arc(_oval(spec))
    assert ok and witness is None


def test_is_arc_collinear_witness():
    spec = make_field(5)
    pts = [_pt(spec, 1, 0, 0), _pt(spec, 0, 1, 0), _pt(spec, 1, 1, 0),
           _pt(spec, 0, 0, 1)]
    ok, witness = is_arc(pts)
    assert not ok
    a, b, c = witness
    assert collinear(a, b, c)
    assert {a, b, c} <= set(pts)


def test_arc_constructor_sorts_and_validates():
    spec = make_field(5)
    pts = list(_oval(spec))
    arc = Arc(reversed(pts))
    assert list(arc.points) == sorted(pts, key=point_sort_key)
    assert arc.size == 6
    assert arc.is_oval() and not arc.is_hyperoval()
    assert _pt(spec, 1, 1, 1) in arc
    assert _pt(spec, 1, 0, 0) not in arc
    with pytest.raises(EqualPoints):
        Arc(pts + [pts[0]])
    with pytest.raises(Degenerate):
        Arc([_pt(spec, 1, 0, 0), _pt(spec, 0, 1, 0), _pt(spec, 1, 1, 0)])


def test_tangent_count_depends_on_arc_size():
    # an n-arc has q + 2 - n tangents at each of its points
    spec = make_field(7)
    oval = list(_oval(spec))
    for n in (3, 5, 8):
        arc = Arc(oval[:n])
        p = arc.points[0]
        tl = tangent_lines(arc, p)
        assert len(tl) == spec.q + 2 - n
        for l in tl:
            assert incident(p, l)
            assert sum(1 for r in arc.points if incident(r, l)) == 1


def test_tangent_lines_requires_membership():
    spec = make_field(5)
    arc = Arc(_oval(spec))
    with pytest.raises(PointNotOnArc):
        tangent_lines(arc, _pt(spec, 1, 0, 0))


def test_search_counts_q3():
    spec = make_field(3)
    arcs = search_maximal_arcs(spec, 4)
    assert len(arcs) == 234
    seen = set()
    for a in arcs:
        assert a.size == 4
        key = frozenset(a.points)
        assert key not in seen
        seen.add(key)


def test_search_first_arc_is_lex_min():
    spec = make_field(3)
    first = search_maximal_arcs(spec, 4, limit=1)[0]
    assert [p.to_text() for p in first.points] == \
        ["[1:0:0]", "[1:0:1]", "[1:1:0]", "[1:1:1]"]


def test_search_limit():
    spec = make_field(5)
    arcs = search_maximal_arcs(spec, 6, limit=7)
    assert len(arcs) == 7


def test_search_no_overfull_arcs_odd_q():
    for p in (3, 5):
        spec = make_field(p)
        assert search_maximal_arcs(spec, p + 2) == []


def test_search_hyperoval_even_q():
    spec = make_field(2, 2)
    found = search_maximal_arcs(spec, 6, limit=1)
    assert len(found) == 1
    hyper = found[0]
    assert hyper.is_hyperoval()
    for a, b, c in itertools.combinations(hyper.points, 3):
        assert not collinear(a, b, c)


def test_search_guards():
    spec = make_field(5)
    with pytest.raises(BoundExceeded):
        search_maximal_arcs(make_field(3, 2), 10)
    with pytest.raises(Degenerate):
        search_maximal_arcs(spec, 0)
    with pytest.raises(Degenerate):
        search_maximal_arcs(spec, 6, limit=0)
    # explicit override unlocks larger orders
    found = search_maximal_arcs(make_field(3, 2), 10, limit=1, max_order=9)
    assert len(found) == 1 and found[0].size == 10


def test_arc_text_and_equality():
    spec = make_field(3)
    a = search_maximal_arcs(spec, 4, limit=1)[0]
    b = Arc(a.points)
    assert a == b and hash(a) == hash(b)
    assert a.to_text() == " ".join(p.to_text() for p in a.points)
