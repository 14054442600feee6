"""Newton polyhedra of lattice supports and their Newton numbers.

A support ``A`` is a finite set of lattice points in the closed orthant of
dimension 1, 2 or 3.  Its Newton polyhedron is the convex hull of the union
of the translated orthants ``a + R^n_{>=0}``; the region below it inside the
orthant has finite volume exactly when the polyhedron meets every axis
(it is *convenient*), and the Newton number is the alternating sum

    nu = n! V_n - (n-1)! V_{n-1} + ... + (-1)^n V_0

where ``V_i`` adds up the ``i``-volumes of that region restricted to the
``i``-dimensional coordinate subspaces and ``V_0`` is 1 when the region is
nonempty, else 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial, prod
from typing import Iterable, Sequence

from .errors import EmptySupport, GeometryError, MalformedInput, NotConvenient, NotLattice
from .exactgeom import (
    Halfspace,
    convex_hull_2d,
    cross,
    dot,
    order_facet,
    polygon_area,
    polytope_facets,
    polytope_volume_3d,
    scaled_vertices,
    sub,
)

AXIS_NAMES = "xyz"


def check_lattice_point(p, dim: int | None = None) -> tuple:
    try:
        coords = tuple(p)
    except TypeError:
        raise MalformedInput(f"point {p!r} is not a coordinate sequence") from None
    for c in coords:
        if isinstance(c, bool) or not isinstance(c, int):
            raise NotLattice(f"point {p!r} has a non-integer coordinate")
        if c < 0:
            raise NotLattice(f"point {p!r} has a negative coordinate")
    if dim is not None and len(coords) != dim:
        raise MalformedInput(f"point {p!r} does not have {dim} coordinates")
    if not 1 <= len(coords) <= 3:
        raise MalformedInput(f"point {p!r}: dimension must be 1, 2 or 3")
    return coords


def _sign_normalise(w):
    """Return ``w`` or ``-w`` if one of them is nonnegative and nonzero, else None."""
    if all(c >= 0 for c in w):
        return w if any(w) else None
    if all(c <= 0 for c in w):
        return tuple(-c for c in w)
    return None


def candidate_normals(pts, n):
    """Nonnegative normals covering every facet of the Newton polyhedron of ``pts``."""
    # every facet of conv(pts) + orthant is spanned by point differences and
    # unit recession rays sharing a base point, so these normals cover them all
    units = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    out = set(units)
    if n == 2:
        for p, q in combinations(pts, 2):
            d = sub(q, p)
            w = _sign_normalise((-d[1], d[0]))
            if w:
                out.add(w)
    elif n == 3:
        for p, q in combinations(pts, 2):
            d = sub(q, p)
            for e in units:
                w = _sign_normalise(cross(d, e))
                if w:
                    out.add(w)
        for p, q, r in combinations(pts, 3):
            w = _sign_normalise(cross(sub(q, p), sub(r, p)))
            if w:
                out.add(w)
    return out


def in_newton_polyhedron(x, pts, n: int | None = None) -> bool:
    """Membership of ``x`` in the Newton polyhedron generated by ``pts``.

    Works for any (also non-convenient) support by testing every candidate
    facet normal.  Use :meth:`NewtonPolyhedron.contains` when the facets are
    already known.
    """
    pts = list(pts)
    if not pts:
        return False
    n = n or len(pts[0])
    if n == 1:
        return x[0] >= min(p[0] for p in pts)
    for w in candidate_normals(pts, n):
        if dot(w, x) < min(dot(w, p) for p in pts):
            return False
    return True


def minimal_points(points: Iterable[Sequence[int]]) -> tuple:
    """Vertices of the Newton polyhedron of ``points``, sorted."""
    pts = sorted(set(tuple(p) for p in points))
    # drop dominated points first; they are never vertices
    pts = [
        p for p in pts
        if not any(q != p and all(qi <= pi for qi, pi in zip(q, p)) for q in pts)
    ]
    if len(pts) <= 2 or len(pts[0]) == 1:
        # two mutually non-dominating points are both vertices
        return tuple(pts)
    keep = []
    for i, p in enumerate(pts):
        rest = pts[:i] + pts[i + 1:]
        if not in_newton_polyhedron(p, rest):
            keep.append(p)
    return tuple(keep)


@dataclass(frozen=True)
class SupportSet:
    """Minimal generating set of a Newton polyhedron (its vertices)."""

    dim: int
    points: tuple

    @classmethod
    def of(cls, points: Iterable[Sequence[int]], dim: int | None = None) -> "SupportSet":
        raw = [check_lattice_point(p, dim) for p in points]
        if not raw:
            raise EmptySupport("support must contain at least one point")
        dims = {len(p) for p in raw}
        if len(dims) != 1:
            raise MalformedInput("support points have mixed dimensions")
        return cls(dims.pop(), minimal_points(raw))

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __contains__(self, p):
        return tuple(p) in self.points

    def permuted(self, sigma: Sequence[int]) -> "SupportSet":
        """Image under the coordinate map ``x -> (x[sigma[0]], x[sigma[1]], ...)``."""
        return SupportSet.of([tuple(p[s] for s in sigma) for p in self.points])

    def as_lists(self) -> list:
        return [list(p) for p in self.points]


@dataclass(frozen=True)
class Facet:
    """Compact facet: its supporting halfspace (strictly positive normal) and
    its vertices, cyclically ordered counterclockwise as seen from the
    polyhedron's side."""

    halfspace: Halfspace
    vertices: tuple


@dataclass(frozen=True)
class NewtonPolyhedron:
    support: SupportSet
    compact_facets: tuple
    axis_intercepts: tuple  # int per axis, None when the axis is missed

    @property
    def dim(self) -> int:
        return self.support.dim

    @property
    def convenient(self) -> bool:
        return all(m is not None for m in self.axis_intercepts)

    def contains(self, x) -> bool:
        """Membership test for points of the closed orthant.

        For convenient polyhedra the only non-compact facets lie in the
        coordinate hyperplanes, so nonnegative points only need the compact
        facet inequalities.
        """
        if any(c < 0 for c in x):
            return False
        if not self.convenient:
            return in_newton_polyhedron(x, self.support.points, self.dim)
        if self.dim == 1:
            return x[0] >= self.axis_intercepts[0]
        return all(f.halfspace.contains(x) for f in self.compact_facets)


def build_polyhedron(support: SupportSet) -> NewtonPolyhedron:
    """Compact facets and axis intercepts of the Newton polyhedron of ``support``.

    Facets come from exhaustive pairs (n=2) or triples (n=3) of support
    points: a hyperplane through them with strictly positive normal and
    every support point on its upper side bounds a compact facet.
    Coplanar candidates collapse onto the same primitive halfspace.
    """
    if not support.points:
        raise EmptySupport("support must contain at least one point")
    pts = support.points
    n = support.dim
    planes = {}
    for combo in combinations(pts, n) if n > 1 else ():
        p = combo[0]
        if n == 2:
            d = sub(combo[1], p)
            w = (-d[1], d[0])
        else:
            w = cross(sub(combo[1], p), sub(combo[2], p))
        w = _sign_normalise(w)
        if w is None or not all(w):
            continue
        c = dot(w, p)
        if all(dot(w, q) >= c for q in pts):
            h = Halfspace.make(w, c)
            planes.setdefault(h, None)
    facets = []
    for h in planes:
        on = [q for q in pts if h.on_boundary(q)]
        if n == 2:
            verts = tuple(sorted(on))
        else:
            verts = order_facet(on, h.normal)
        facets.append(Facet(h, verts))
    facets.sort(key=lambda f: (f.halfspace.normal, f.halfspace.offset))

    intercepts = []
    for i in range(n):
        hits = [p[i] for p in pts if all(p[j] == 0 for j in range(n) if j != i)]
        intercepts.append(min(hits) if hits else None)
    return NewtonPolyhedron(support, tuple(facets), tuple(intercepts))


def restrict(support: SupportSet, axes: Iterable[int]) -> SupportSet:
    """Generators of the polyhedron's trace on the coordinate subspace ``axes``.

    A convex combination of orthant points has a zero coordinate only if
    every contributing point does, so the trace is generated by the support
    points living in the subspace.
    """
    axes = tuple(sorted(set(axes)))
    if not axes or any(not 0 <= i < support.dim for i in axes):
        raise MalformedInput(f"invalid coordinate subset {axes}")
    outside = [j for j in range(support.dim) if j not in axes]
    kept = [tuple(p[i] for i in axes) for p in support.points if all(p[j] == 0 for j in outside)]
    if not kept:
        raise NotConvenient(f"the polyhedron does not meet the coordinate subspace {axes}")
    return SupportSet.of(kept)


@dataclass(frozen=True)
class GammaMinusRegion:
    """The region under a convenient Newton polyhedron, inside its box.

    Every point with ``x_i >= m_i`` dominates the axis vertex ``m_i e_i`` and
    so lies in the polyhedron; the region therefore fits in the box
    ``prod [0, m_i]`` and its volume is the box volume minus the volume of
    the (convex) polyhedron clipped to the box.
    """

    support: SupportSet
    box: tuple
    clipped_vertices: tuple
    clipped_facets: tuple  # index cycles (n=3) or the single boundary cycle (n=2)
    volume: Fraction
    restrictions: dict = field(compare=False)  # axes tuple -> measure, proper subspaces
    v0: int

    @property
    def dim(self) -> int:
        return self.support.dim

    @property
    def empty(self) -> bool:
        return self.v0 == 0

    @property
    def plane_restrictions(self) -> dict:
        return {k: v for k, v in self.restrictions.items() if len(k) == 2}

    @property
    def axis_restrictions(self) -> dict:
        return {k: v for k, v in self.restrictions.items() if len(k) == 1}

    def volumes(self) -> list:
        """``[V_0, V_1, ..., V_n]``."""
        out = [Fraction(self.v0)]
        for i in range(1, self.dim):
            out.append(sum((v for k, v in self.restrictions.items() if len(k) == i), Fraction(0)))
        out.append(self.volume)
        return out


def _clipped_3d(poly: NewtonPolyhedron, box):
    hs = [f.halfspace for f in poly.compact_facets]
    for i in range(3):
        e = [0, 0, 0]
        e[i] = 1
        hs.append(Halfspace.make(e, 0))
        e[i] = -1
        hs.append(Halfspace.make(e, -box[i]))
    # integer coordinates (scaled by a common denominator) keep this fast
    verts, scale = scaled_vertices(hs, 3)
    facets = polytope_facets(verts, hs, scale)
    volume = polytope_volume_3d(verts, facets) / scale**3
    rverts = tuple(tuple(Fraction(x, scale) for x in v) for v in verts)
    return rverts, tuple(tuple(f) for f in facets), volume


def _clipped_2d(poly: NewtonPolyhedron, box):
    hull = convex_hull_2d(list(poly.support.points) + [tuple(box)])
    rverts = tuple(tuple(Fraction(x) for x in v) for v in hull.vertices)
    return rverts, (tuple(range(len(rverts))),), polygon_area(hull.vertices)


def gamma_minus(poly: NewtonPolyhedron) -> GammaMinusRegion:
    if not poly.convenient:
        raise NotConvenient("the Newton polyhedron misses a coordinate axis")
    n = poly.dim
    box = poly.axis_intercepts
    restrictions = {}
    for k in range(1, n):
        for axes in combinations(range(n), k):
            restrictions[axes] = _measure(restrict(poly.support, axes))
    if any(m == 0 for m in box):
        # the origin is a vertex: the polyhedron is the whole orthant
        return GammaMinusRegion(poly.support, box, (), (), Fraction(0), restrictions, 0)
    if n == 1:
        verts, facets, clip = ((Fraction(box[0]),),), (), Fraction(0)
    elif n == 2:
        verts, facets, clip = _clipped_2d(poly, box)
    else:
        verts, facets, clip = _clipped_3d(poly, box)
    volume = Fraction(prod(box)) - clip
    return GammaMinusRegion(poly.support, box, verts, facets, volume, restrictions, 1)


def _measure(support: SupportSet) -> Fraction:
    return gamma_minus(build_polyhedron(support)).volume


def nu_from_volumes(volumes: Sequence[Fraction]) -> int:
    """Alternating sum ``sum_i (-1)^(n-i) i! V_i`` for ``volumes = [V_0..V_n]``."""
    n = len(volumes) - 1
    total = sum((-1) ** (n - i) * factorial(i) * Fraction(v) for i, v in enumerate(volumes))
    if total.denominator != 1:
        raise GeometryError(f"Newton number {total} is not an integer")
    return int(total)


def newton_number(support: SupportSet | Iterable[Sequence[int]]) -> int:
    """Newton number of a convenient support; raises :class:`NotConvenient` otherwise."""
    if not isinstance(support, SupportSet):
        support = SupportSet.of(support)
    return nu_from_volumes(gamma_minus(build_polyhedron(support)).volumes())


def plane_label(axis: int) -> str:
    """Name of the coordinate plane (or line, in 2D) ``{x_axis = 0}``."""
    return f"{AXIS_NAMES[axis]}=0"
