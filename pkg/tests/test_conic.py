"""Conics: varieties, gradients, tangents, degeneracy, and transformation
under collineations."""

import random

import pytest

from galoisplane.conic import (
    Conic,
    combinatorial_tangents,
    evaluate,
    gradient,
    is_nondegenerate,
    line_conic_intersect,
    parse_conic,
    symmetric_matrix,
    tangent_at,
    transform_conic,
    upper_matrix,
    variety_of,
)
from galoisplane.errors import (
    Degenerate,
    EvenCharacteristic,
    NotOnVariety,
    ZeroVector,
)
from galoisplane.gf import make_field
from galoisplane.linalg import Mat
from galoisplane.errors import Singular
from galoisplane.pg2 import (
    Collineation,
    canonicalize,
    incident,
    iter_points,
    meet,
    plane,
)


def _conic(spec, *ints):
    return Conic(tuple(spec.element(v) for v in ints))


def _pt(spec, *codes):
    return canonicalize(tuple(spec.from_int(c) for c in codes))


def test_parse_conic_forms():
    spec = make_field(5)
    want = _conic(spec, 1, 0, 0, 0, 0, -1)
    assert parse_conic(spec, "[1:0:0:0:0:-1]") == want
    assert parse_conic(spec, "1,0,0,0,0,4") == want
    assert parse_conic(spec, "(1:0:0:0:0:4)") == want
    assert parse_conic(spec, "[2:0:0:0:0:3]") == want  # scalar multiple
    with pytest.raises(ZeroVector):
        parse_conic(spec, "[0:0:0:0:0:0]")
    with pytest.raises(ValueError):
        parse_conic(spec, "[1:2:3]")


def test_conic_canonical_and_text():
    spec = make_field(7)
    c = _conic(spec, 0, 0, 0, 3, 3, 6)
    assert c.to_ints() == (0, 0, 0, 1, 1, 2)
    assert c.to_text() == "[0:0:0:1:1:2]"
    assert hash(c) == hash(_conic(spec, 0, 0, 0, 1, 1, 2))


def test_evaluate_matches_formula():
    spec = make_field(7)
    rng = random.Random(3)
    for _ in range(100):
        coeffs = [rng.randrange(7) for _ in range(6)]
        if not any(coeffs):
            coeffs[0] = 1
        c = _conic(spec, *coeffs)
        x, y, z = (rng.randrange(7) for _ in range(3))
        if not (x or y or z):
            x = 1
        p = _pt(spec, x, y, z)
        xe, ye, ze = p.coords
        a, b, cc, d, e, f = c.coeffs
        want = (a * xe * xe + b * ye * ye + cc * ze * ze
                + d * xe * ye + e * xe * ze + f * ye * ze)
        assert evaluate(c, p) == want
        assert c.evaluate(p) == want


def test_variety_frozen_values():
    spec = make_field(5)
    c = _conic(spec, 1, 0, 0, 0, 0, -1)  # x^2 - yz
    got = {p.to_text() for p in c.variety()}
    assert got == {"[0:1:0]", "[0:0:1]", "[1:1:1]", "[1:2:3]", "[1:3:2]", "[1:4:4]"}
    g = _conic(spec, 0, 0, 0, 1, 1, 1)  # xy + xz + yz
    got2 = {p.to_text() for p in g.variety()}
    assert got2 == {"[1:0:0]", "[0:1:0]", "[0:0:1]", "[1:1:2]", "[1:2:1]", "[1:3:3]"}


def test_variety_enumeration_order_canonical():
    spec = make_field(5)
    c = _conic(spec, 1, 0, 0, 0, 0, -1)
    pts = list(iter_points(spec))
    order = {p: i for i, p in enumerate(pts)}
    var = c.variety()
    assert list(var) == sorted(var, key=order.__getitem__)
    assert variety_of(c) == var


def test_variety_size_nondegenerate_sampled():
    rng = random.Random(4)
    for p, k in ((5, 1), (7, 1), (3, 2)):
        spec = make_field(p, k)
        q = spec.q
        found = 0
        while found < 30:
            coeffs = [rng.randrange(q) for _ in range(6)]
            if not any(coeffs):
                continue
            c = Conic(tuple(spec.from_int(v) for v in coeffs))
            if not is_nondegenerate(c).verdict:
                continue
            found += 1
            assert len(c.variety()) == q + 1


def test_gradient_values_and_even_char_guard():
    spec = make_field(5)
    c = _conic(spec, 1, 0, 0, 0, 0, -1)
    p = _pt(spec, 1, 1, 1)
    g = gradient(c, p)
    assert tuple(v.to_int() for v in g) == (2, 4, 4)  # (2, -1, -1)
    spec2 = make_field(2, 2)
    c2 = _conic(spec2, 1, 0, 0, 0, 0, 1)
    with pytest.raises(EvenCharacteristic):
        gradient(c2, _pt(spec2, 0, 1, 0))


def test_tangent_at_known_values():
    spec = make_field(5)
    c = _conic(spec, 1, 0, 0, 0, 0, -1)
    assert tangent_at(c, _pt(spec, 1, 1, 1)).to_text() == "[1:2:2]"
    assert tangent_at(c, _pt(spec, 0, 0, 1)).to_text() == "[0:1:0]"
    with pytest.raises(NotOnVariety):
        tangent_at(c, _pt(spec, 1, 1, 0))


def test_tangent_at_degenerate_singular_point():
    spec = make_field(7)
    c = _conic(spec, 1, 1, 0, 0, 0, 0)  # x^2 + y^2, singular at (0,0,1)
    p = _pt(spec, 0, 0, 1)
    assert c.evaluate(p).is_zero()
    with pytest.raises(Degenerate):
        tangent_at(c, p)


def test_tangent_meets_variety_once():
    spec = make_field(7)
    c = _conic(spec, 1, 0, 0, 0, 0, -1)
    for p in c.variety():
        t = tangent_at(c, p)
        assert line_conic_intersect(c, t) == [p]


def test_line_conic_intersect_brute_force():
    spec = make_field(5)
    pl = plane(spec)
    c = _conic(spec, 1, 2, 0, 0, 1, 3)
    var = set(c.variety())
    for li, l in enumerate(pl.lines):
        want = sorted(
            (pl.points[i] for i in pl.line_points[li] if pl.points[i] in var),
            key=lambda p: pl.point_index[p],
        )
        assert line_conic_intersect(c, l) == want


def test_combinatorial_tangents_match_gradient():
    for p, k in ((5, 1), (7, 1), (3, 2)):
        spec = make_field(p, k)
        c = _conic(spec, 1, 0, 0, 0, 0, -1)
        assert is_nondegenerate(c).verdict
        for pt in c.variety():
            assert combinatorial_tangents(c, pt) == [tangent_at(c, pt)]


def test_combinatorial_tangents_even_characteristic():
    # gradient is unavailable in characteristic 2 but counting still works
    spec = make_field(2, 2)
    c = _conic(spec, 1, 0, 0, 0, 0, 1)  # x^2 + yz
    report = is_nondegenerate(c)
    assert report.gradient_ok is None
    assert report.combinatorial_ok and report.verdict
    assert len(c.variety()) == 5
    for pt in c.variety():
        tl = combinatorial_tangents(c, pt)
        assert len(tl) == 1
    # all five tangents pass through the nucleus
    nuclei = {combinatorial_tangents(c, pt)[0] for pt in c.variety()}
    lines = sorted(nuclei, key=lambda l: l.to_text())
    common = meet(lines[0], lines[1])
    assert all(incident(common, l) for l in lines)


def test_combinatorial_tangents_requires_variety_point():
    spec = make_field(5)
    c = _conic(spec, 1, 0, 0, 0, 0, -1)
    with pytest.raises(NotOnVariety):
        combinatorial_tangents(c, _pt(spec, 1, 0, 0))


def test_degenerate_double_line():
    spec = make_field(5)
    c = _conic(spec, 1, 0, 0, 0, 0, 0)  # x^2: the line x=0 doubled
    report = is_nondegenerate(c)
    assert not report.verdict
    assert not report.combinatorial_ok
    assert report.max_points_on_a_line == 6
    assert len(c.variety()) == 6


def test_degenerate_line_pair():
    spec = make_field(5)
    c = _conic(spec, 0, 0, 0, 1, 0, 0)  # xy
    report = is_nondegenerate(c)
    assert not report.verdict
    assert len(c.variety()) == 11  # two lines sharing a point


def test_single_point_variety_disagreement():
    # x^2 + y^2 over GF(7): -1 is not a square, variety is one point.
    # Counting alone cannot see the defect; the gradient does.
    spec = make_field(7)
    c = _conic(spec, 1, 1, 0, 0, 0, 0)
    report = is_nondegenerate(c)
    assert [p.to_text() for p in c.variety()] == ["[0:0:1]"]
    assert report.combinatorial_ok
    assert report.gradient_ok is False
    assert not report.verdict


def test_empty_variety_is_degenerate():
    # x^2 + y^2 + z^2 over GF(3) sums three squares to 0 only trivially
    spec = make_field(3)
    c = _conic(spec, 1, 1, 1, 0, 0, 0)
    if len(c.variety()) == 0:
        assert not is_nondegenerate(c).verdict


def test_upper_matrix_reproduces_form():
    rng = random.Random(5)
    for p, k in ((5, 1), (2, 2)):
        spec = make_field(p, k)
        q = spec.q
        for _ in range(40):
            coeffs = [rng.randrange(q) for _ in range(6)]
            if not any(coeffs):
                continue
            c = Conic(tuple(spec.from_int(v) for v in coeffs))
            u = upper_matrix(c)
            for _ in range(10):
                v = tuple(spec.from_int(rng.randrange(q)) for _ in range(3))
                if all(x.is_zero() for x in v):
                    continue
                lhs = sum(
                    (v[i] * u.at(i, j) * v[j] for i in range(3) for j in range(3)),
                    spec.zero(),
                )
                pcan = canonicalize(v)
                s = next(x for x in pcan.coords if not x.is_zero())
                # evaluate is quadratic: f(sv) = s^2 f(v)
                assert c.evaluate(canonicalize(v)).is_zero() == lhs.is_zero()


def test_symmetric_matrix_odd_char_only():
    spec = make_field(5)
    c = _conic(spec, 1, 2, 3, 4, 0, 1)
    m = symmetric_matrix(c)
    assert m == m.transpose()
    with pytest.raises(EvenCharacteristic):
        symmetric_matrix(_conic(make_field(2, 2), 1, 0, 0, 0, 0, 1))


def test_transform_conic_variety_contract():
    rng = random.Random(6)
    for p, k in ((5, 1), (3, 2), (2, 2)):
        spec = make_field(p, k)
        q = spec.q
        pl = plane(spec)
        c = _conic(spec, 1, 0, 0, 0, 0, -1) if p != 2 \
            else _conic(spec, 1, 0, 0, 0, 0, 1)
        done = 0
        while done < 15:
            entries = tuple(spec.from_int(rng.randrange(q)) for _ in range(9))
            try:
                t = Collineation(Mat(spec, 3, 3, entries))
            except Singular:
                continue
            done += 1
            image = transform_conic(t, c)
            for pt in pl.points:
                assert c.evaluate(pt).is_zero() == image.evaluate(t.apply(pt)).is_zero()


def test_transform_conic_roundtrip():
    spec = make_field(7)
    rng = random.Random(7)
    c = _conic(spec, 1, 3, 0, 2, 0, 6)
    while True:
        entries = tuple(spec.from_int(rng.randrange(7)) for _ in range(9))
        try:
            t = Collineation(Mat(spec, 3, 3, entries))
            break
        except Singular:
            continue
    assert transform_conic(t.inverse(), transform_conic(t, c)) == c


def test_transform_preserves_nondegeneracy():
    spec = make_field(5)
    c = _conic(spec, 1, 0, 0, 0, 0, -1)
    t = Collineation.diagonal(tuple(spec.from_int(v) for v in (1, 2, 3)))
    assert is_nondegenerate(transform_conic(t, c)).verdict
