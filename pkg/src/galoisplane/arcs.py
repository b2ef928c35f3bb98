"""Arcs in PG(2, q): point sets with no 3 collinear.

An arc of size q+1 is an oval, size q+2 a hyperoval (even q only).  The
search routine enumerates arcs of a requested size as bitmask index sets over
the cached plane, extending only with indices above the last chosen one, so
results come out in lexicographic order of index tuples and each arc is
produced exactly once.
"""

from __future__ import annotations

from itertools import combinations

from .errors import BoundExceeded, EqualPoints, Degenerate, PointNotOnArc, SpecMismatch
from .gf import FieldSpec
from .pg2 import ProjPoint, collinear, plane, point_sort_key

SEARCH_MAX_ORDER = 7


def is_arc(points) -> tuple:
    """(True, None) if no two equal and no three collinear, else (False, witness)."""
    pts = list(points)
    for a, b in combinations(range(len(pts)), 2):
        if pts[a] == pts[b]:
            return False, (pts[a], pts[b])
    for a, b, c in combinations(pts, 3):
        if collinear(a, b, c):
            return False, (a, b, c)
    return True, None


class Arc:
    """An arc, held as a tuple of points sorted in plane enumeration order."""

    __slots__ = ("points",)

    def __init__(self, points, *, _trusted: bool = False):
        pts = tuple(points)
        if not pts:
            raise Degenerate("an arc needs at least one point")
        spec = pts[0].spec
        for p in pts[1:]:
            if p.spec != spec:
                raise SpecMismatch("arc points from different field specs")
        if not _trusted:
            ok, witness = is_arc(pts)
            if not ok:
                if len(witness) == 2:
                    raise EqualPoints(f"duplicate arc point {witness[0].to_text()}")
                raise Degenerate(
                    "three arc points are collinear: "
                    + " ".join(p.to_text() for p in witness)
                )
        self.points = tuple(sorted(pts, key=point_sort_key))

    @property
    def spec(self) -> FieldSpec:
        return self.points[0].spec

    @property
    def size(self) -> int:
        return len(self.points)

    def is_oval(self) -> bool:
        return self.size == self.spec.q + 1

    def is_hyperoval(self) -> bool:
        return self.size == self.spec.q + 2

    def __contains__(self, p) -> bool:
        return p in self.points

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        if not isinstance(other, Arc):
            return NotImplemented
        return self.points == other.points

    def __hash__(self):
        return hash(("arc", self.points))

    def to_text(self) -> str:
        return " ".join(p.to_text() for p in self.points)

    def __repr__(self):
        return f"Arc({self.size} points over GF({self.spec.q}))"


def tangent_lines(arc: Arc, p: ProjPoint) -> list:
    """Lines through an arc point meeting the arc only there.

    An arc of size n has exactly q + 2 - n tangents at each of its points:
    of the q + 1 lines through p, the n - 1 secants to the other arc points
    are pairwise distinct because no line carries 3 arc points.
    """
    if p not in arc.points:
        raise PointNotOnArc(f"{p.to_text()} is not a point of the arc")
    pl = plane(arc.spec)
    arc_mask = 0
    for a in arc.points:
        arc_mask |= 1 << pl.point_index[a]
    pi = pl.point_index[p]
    out = []
    for li in pl.point_lines[pi]:
        if (pl.line_masks[li] & arc_mask).bit_count() == 1:
            out.append(pl.lines[li])
    return out


def search_maximal_arcs(spec: FieldSpec, target_size: int, limit=None,
                        *, max_order: int = SEARCH_MAX_ORDER) -> list:
    """All arcs of exactly target_size, as Arc objects, in index-lex order.

    Exhaustive depth-first search over point indices with secant-line
    exclusion masks; stops early once `limit` arcs are found.  The default
    order cap keeps the exhaustive search affordable; raise `max_order`
    explicitly for a larger field.
    """
    if spec.q > max_order:
        raise BoundExceeded(
            f"arc search capped at q <= {max_order}, got q={spec.q}; "
            "pass a larger max_order to override"
        )
    if target_size < 1:
        raise Degenerate(f"target arc size must be positive, got {target_size}")
    if limit is not None and limit < 1:
        raise Degenerate(f"limit must be positive when given, got {limit}")

    pl = plane(spec)
    n = pl.n
    line_masks = pl.line_masks
    pair_line = pl.pair_line
    results = []
    chosen: list[int] = []

    def extend(cand: int) -> bool:
        # cand holds only indices greater than the last chosen one
        if len(chosen) == target_size:
            results.append(tuple(chosen))
            return limit is not None and len(results) >= limit
        if len(chosen) + cand.bit_count() < target_size:
            return False
        c = cand
        while c:
            low = c & -c
            j = low.bit_length() - 1
            c ^= low
            nxt = c
            for i in chosen:
                nxt &= ~line_masks[pair_line(i, j)]
            chosen.append(j)
            stop = extend(nxt)
            chosen.pop()
            if stop:
                return True
        return False

    extend((1 << n) - 1)
    return [
        Arc((pl.points[i] for i in idxs), _trusted=True)
        for idxs in results
    ]
