"""Adding a lattice point under a Newton polyhedron in dimension 3.

Adding a point ``P`` under a convenient polyhedron never increases the
Newton number, and keeps it unchanged exactly when the added piece is a
pyramid of height 1 whose base lies in a coordinate plane through ``P``.
This module decides that criterion from a small vertex skeleton and
classifies the strict drops.

Skeleton lemma
--------------
The added piece ``conv(G u {P}) - G`` is the union of the pyramids
``cone(F, P)`` over the compact facets ``F`` that ``P`` strictly violates
(the *visible* facets); the coordinate facets cannot be violated by an
orthant point.  Compact facets have strictly positive normals, so no visible
facet lies in a coordinate plane ``H`` and each has a vertex off ``H``.

* If the only vertex off ``H`` among all visible facets is ``Q``, every
  visible facet is ``cone(F n H, Q)``, hence every ``cone(F, P)`` is
  ``cone(conv(P, F n H), Q)`` and the added piece is the pyramid over its
  trace on ``H`` with apex ``Q``.
* Conversely, if the piece is a pyramid over ``H`` with apex ``Q`` at height
  1, every lattice point of it off ``H`` sits at height 1 and so equals
  ``Q``; visible facet vertices are such lattice points.

So the unit-pyramid criterion for ``H`` reads: the visible facets have
exactly one vertex off ``H`` and it has height 1.  One off-plane vertex at
height 1 therefore always comes with the pyramid shape.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterable, Sequence

from .core import (
    NewtonPolyhedron,
    SupportSet,
    build_polyhedron,
    check_lattice_point,
    newton_number,
    plane_label,
)
from .errors import MalformedInput, NotConvenient, PointInPolyhedron, TheoremViolation

log = logging.getLogger(__name__)

# planes {z=0}, {y=0}, {x=0} are tried in this order
PLANE_ORDER = (2, 1, 0)


def _require_3d(poly: NewtonPolyhedron):
    if poly.dim != 3:
        raise MalformedInput("point addition is implemented for supports in dimension 3")
    if not poly.convenient:
        raise NotConvenient("the Newton polyhedron misses a coordinate axis")


def _point_under(poly: NewtonPolyhedron, point) -> tuple:
    _require_3d(poly)
    p = check_lattice_point(point, 3)
    if poly.contains(p):
        raise PointInPolyhedron(f"{p} already lies in the Newton polyhedron")
    return p


def add_point(support: SupportSet, point) -> SupportSet:
    """Support of ``conv(G u {P})``; vertices absorbed by ``P`` are dropped."""
    p = check_lattice_point(point, support.dim)
    if build_polyhedron(support).contains(p):
        raise PointInPolyhedron(f"{p} already lies in the Newton polyhedron")
    return SupportSet.of(list(support.points) + [p])


@dataclass(frozen=True)
class PlaneData:
    """Visible-facet vertices off the coordinate plane ``{x_axis = 0}``."""

    axis: int
    off_plane: tuple

    @property
    def height(self) -> int | None:
        """Height over the plane when a single vertex is off it."""
        if len(self.off_plane) == 1:
            return self.off_plane[0][self.axis]
        return None


@dataclass(frozen=True)
class DifferenceSkeleton:
    point: tuple
    visible_facets: tuple
    vertex_set: tuple
    planes: tuple  # PlaneData for each coordinate plane containing the point, in PLANE_ORDER

    def plane(self, axis: int) -> PlaneData | None:
        for pd in self.planes:
            if pd.axis == axis:
                return pd
        return None


def difference_skeleton(poly: NewtonPolyhedron, point) -> DifferenceSkeleton:
    p = _point_under(poly, point)
    visible = tuple(f for f in poly.compact_facets if not f.halfspace.contains(p))
    assert visible, "a point outside a convenient polyhedron violates a compact facet"
    verts = {p}
    for f in visible:
        verts.update(f.vertices)
    planes = []
    for axis in PLANE_ORDER:
        if p[axis] != 0:
            continue
        off = tuple(sorted(v for v in verts if v[axis] > 0))
        planes.append(PlaneData(axis, off))
    return DifferenceSkeleton(p, visible, tuple(sorted(verts)), tuple(planes))


def _unit_pyramid(skel: DifferenceSkeleton):
    for pd in skel.planes:
        if pd.height == 1:
            return pd.axis, pd.off_plane[0]
    return None


def is_unit_pyramid(poly: NewtonPolyhedron, point):
    """``(axis, apex)`` of the first coordinate plane ``{x_axis = 0}`` (order
    z, y, x) over which the added piece is a height-1 pyramid, else ``None``."""
    return _unit_pyramid(difference_skeleton(poly, point))


class Relation(str, Enum):
    EQUAL = "equal"
    STRICT = "strict"


class ReasonKind(str, Enum):
    INTERIOR_POINT = "interior_point"
    TALL_PYRAMID = "tall_pyramid"
    MULTI_APEX = "multi_apex"


@dataclass(frozen=True)
class Reason:
    kind: ReasonKind
    axis: int | None = None
    height: int | None = None
    count: int | None = None

    def to_dict(self) -> dict:
        if self.kind is ReasonKind.INTERIOR_POINT:
            return {"kind": self.kind.value}
        d = {"plane": plane_label(self.axis), "kind": self.kind.value}
        if self.kind is ReasonKind.TALL_PYRAMID:
            d["height"] = self.height
        else:
            d["count"] = self.count
        return d


@dataclass(frozen=True)
class Classification:
    relation: Relation
    axis: int | None = None
    apex: tuple | None = None
    reasons: tuple = ()

    @property
    def equal(self) -> bool:
        return self.relation is Relation.EQUAL

    @property
    def interior(self) -> bool:
        return any(r.kind is ReasonKind.INTERIOR_POINT for r in self.reasons)

    def to_dict(self) -> dict:
        if self.equal:
            return {"relation": self.relation.value, "plane": plane_label(self.axis), "apex": list(self.apex)}
        return {"relation": self.relation.value, "reasons": [r.to_dict() for r in self.reasons]}


def classify_skeleton(skel: DifferenceSkeleton, predicate=_unit_pyramid) -> Classification:
    hit = predicate(skel)
    if hit is not None:
        return Classification(Relation.EQUAL, hit[0], hit[1])
    if not skel.planes:
        return Classification(Relation.STRICT, reasons=(Reason(ReasonKind.INTERIOR_POINT),))
    reasons = []
    for pd in skel.planes:
        if len(pd.off_plane) == 1:
            reasons.append(Reason(ReasonKind.TALL_PYRAMID, pd.axis, height=pd.height))
        else:
            reasons.append(Reason(ReasonKind.MULTI_APEX, pd.axis, count=len(pd.off_plane)))
    return Classification(Relation.STRICT, reasons=tuple(reasons))


def classify(poly: NewtonPolyhedron, point) -> Classification:
    """Equal with its witness plane and apex, or Strict with the reason: the
    point is off every coordinate plane, or each plane through it carries a
    pyramid of height >= 2 or at least two off-plane vertices."""
    return classify_skeleton(difference_skeleton(poly, point))


@dataclass(frozen=True)
class DropReport:
    total: int
    steps: tuple
    skipped: tuple  # indices of points already inside when reached
    support: SupportSet


def nu_drop(support: SupportSet, points: Iterable[Sequence[int]]) -> DropReport:
    """Add ``points`` one at a time, recording the Newton number drop of each step."""
    pts = [check_lattice_point(p, support.dim) for p in points]
    current = support
    nu = newton_number(current)
    steps, skipped = [], []
    for i, p in enumerate(pts):
        if build_polyhedron(current).contains(p):
            log.warning("point %s already lies in the polyhedron; step skipped", p)
            steps.append(0)
            skipped.append(i)
            continue
        current = SupportSet.of(list(current.points) + [p])
        after = newton_number(current)
        steps.append(nu - after)
        nu = after
    return DropReport(sum(steps), tuple(steps), tuple(skipped), current)


@dataclass(frozen=True)
class EqualWitness:
    point: tuple
    axis: int
    apex: tuple


def lattice_points_under(poly: NewtonPolyhedron):
    """Lattice points of the box outside the polyhedron, lexicographically."""
    _require_3d(poly)
    ranges = [range(m + 1) for m in poly.axis_intercepts]
    for p in product(*ranges):
        if not poly.contains(p):
            yield p


def enumerate_equal(support: SupportSet) -> list:
    """Every lattice point whose addition keeps the Newton number, with witness.

    Each hit is re-checked against the numeric Newton numbers; a mismatch
    raises :class:`TheoremViolation`.
    """
    poly = build_polyhedron(support)
    _require_3d(poly)
    nu = newton_number(support)
    out = []
    for p in lattice_points_under(poly):
        hit = is_unit_pyramid(poly, p)
        if hit is None:
            continue
        after = newton_number(SupportSet.of(list(support.points) + [p]))
        if after != nu:
            raise TheoremViolation(f"unit pyramid at {p} but Newton number {nu} -> {after}")
        out.append(EqualWitness(p, hit[0], hit[1]))
    return out


class ZeroKind(str, Enum):
    EMPTY = "empty"
    AXIS_INTERCEPT = "axis_intercept"
    POSITIVE = "positive"


@dataclass(frozen=True)
class ZeroWitness:
    kind: ZeroKind
    axis: int | None = None


def nu_zero_witness(support: SupportSet) -> ZeroWitness:
    """Why the Newton number vanishes: the region under the polyhedron is
    empty, or some axis is met at coordinate 1.  ``POSITIVE`` otherwise."""
    poly = build_polyhedron(support)
    if not poly.convenient:
        raise NotConvenient("the Newton polyhedron misses a coordinate axis")
    m = poly.axis_intercepts
    if any(c == 0 for c in m):
        return ZeroWitness(ZeroKind.EMPTY)
    for i, c in enumerate(m):
        if c == 1:
            return ZeroWitness(ZeroKind.AXIS_INTERCEPT, i)
    return ZeroWitness(ZeroKind.POSITIVE)
