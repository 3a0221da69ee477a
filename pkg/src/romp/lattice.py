"""Full sets, foundations, descending staircases, and their axis types.

A full subset of the lattice (closed under adding non-negative vectors) is
represented by its foundation: the minimal antichain generating it.  The
foundation is stored in descending-staircase order, first coordinates
strictly increasing and second coordinates strictly decreasing.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable

from .moments import LatticePoint, lattice_point


class PatternType(Enum):
    """Which coordinate axes the descending staircase touches."""

    I = "I"  # noqa: E741 - axis-contact naming, matches the I-IV classification
    II = "II"
    III = "III"
    IV = "IV"

    def __str__(self) -> str:
        return self.value


def _minimal_points(points) -> tuple:
    distinct = set(points)
    minimal = [
        p
        for p in distinct
        if not any(q != p and q.k1 <= p.k1 and q.k2 <= p.k2 for q in distinct)
    ]
    minimal.sort(key=lambda p: p.k1)
    return tuple(minimal)


class Pattern:
    """A full set represented by its foundation; the full set stays virtual."""

    __slots__ = ("_foundation",)

    def __init__(self, points: Iterable):
        points = [lattice_point(p) for p in points]
        if not points:
            raise ValueError("a pattern needs at least one lattice point")
        self._foundation = _minimal_points(points)

    @property
    def foundation(self) -> tuple:
        return self._foundation

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pattern):
            return NotImplemented
        return self._foundation == other._foundation

    def __hash__(self) -> int:
        return hash(self._foundation)

    def __repr__(self) -> str:
        return f"Pattern({list(self._foundation)})"


class StaircasePath:
    """Foundation points interleaved with the corners joining them.

    The corner between consecutive foundation points p, q is the meet of
    their subspaces, the componentwise maximum (q1, p2); the whole path is
    nonincreasing.
    """

    __slots__ = ("_points",)

    def __init__(self, points: Iterable):
        pts = tuple(lattice_point(p) for p in points)
        for a, b in zip(pts, pts[1:]):
            if not ((a.k1 <= b.k1 and a.k2 >= b.k2) or (a.k1 >= b.k1 and a.k2 <= b.k2)):
                raise ValueError(f"staircase steps must be axis-monotone: {a} -> {b}")
        self._points = pts

    @property
    def points(self) -> tuple:
        return self._points

    @property
    def foundation_points(self) -> tuple:
        return self._points[0::2]

    @property
    def corners(self) -> tuple:
        return self._points[1::2]

    def __eq__(self, other) -> bool:
        if not isinstance(other, StaircasePath):
            return NotImplemented
        return self._points == other._points

    def __hash__(self) -> int:
        return hash(self._points)

    def __repr__(self) -> str:
        return f"StaircasePath({list(self._points)})"


def foundation(points: Iterable) -> Pattern:
    """Minimal antichain generating the same full set as ``points``."""
    return Pattern(points)


def closure_membership(pattern: Pattern, k) -> bool:
    """Whether k belongs to the full set, i.e. dominates some foundation point."""
    k = lattice_point(k)
    return any(f.k1 <= k.k1 and f.k2 <= k.k2 for f in pattern.foundation)


def meet_corner(p, q) -> LatticePoint:
    """Index of the intersection of two canonical subspaces: componentwise max."""
    p, q = lattice_point(p), lattice_point(q)
    return LatticePoint(max(p.k1, q.k1), max(p.k2, q.k2))


def join_origin(p, q) -> LatticePoint:
    """Componentwise minimum (p1, q2) of a staircase-ordered pair.

    This is the subspace index reached when the pair is merged into one
    measure; p must come before q in descending-staircase order.
    """
    p, q = lattice_point(p), lattice_point(q)
    if p.k1 > q.k1 or p.k2 < q.k2:
        raise ValueError(f"{p} does not precede {q} in descending-staircase order")
    return LatticePoint(p.k1, q.k2)


def staircase(pattern: Pattern) -> StaircasePath:
    """The unique nonincreasing path through the foundation, corners included."""
    points = []
    fnd = pattern.foundation
    for i, p in enumerate(fnd):
        points.append(p)
        if i + 1 < len(fnd):
            points.append(meet_corner(p, fnd[i + 1]))
    return StaircasePath(points)


def classify_type(pattern: Pattern) -> PatternType:
    """Axis-contact type of the staircase.

    Type I touches {0} x Z+ only, Type II touches Z+ x {0} only, Type III
    touches both, Type IV neither; equivalently, test whether the minimal
    first and second coordinates over the foundation are zero.
    """
    fnd = pattern.foundation
    touches_vertical = fnd[0].k1 == 0
    touches_horizontal = fnd[-1].k2 == 0
    if touches_vertical and touches_horizontal:
        return PatternType.III
    if touches_vertical:
        return PatternType.I
    if touches_horizontal:
        return PatternType.II
    return PatternType.IV
