"""Exact rational kernels for low-dimensional convex geometry.

Everything here works on tuples of ``int`` or :class:`fractions.Fraction`;
no floating point is ever produced.  The algorithms are deliberately simple
(brute force over plane triples) because the inputs are desk sized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from .errors import GeometryError

Rational = Fraction
Point = tuple  # tuple of int | Fraction


def as_rational_point(p) -> tuple:
    return tuple(Fraction(c) for c in p)


@dataclass(frozen=True)
class Halfspace:
    """The closed halfspace ``{x : <normal, x> >= offset}``.

    The normal is stored primitive (gcd of its entries is 1).  Use
    :meth:`make` to normalise arbitrary integer data.
    """

    normal: tuple
    offset: int

    @classmethod
    def make(cls, normal: Sequence[int], offset: int) -> "Halfspace":
        normal = tuple(int(c) for c in normal)
        if not any(normal):
            raise GeometryError("halfspace normal must be nonzero")
        g = 0
        for c in normal:
            g = gcd(g, c)
        g = gcd(g, int(offset))
        normal = tuple(c // g for c in normal)
        offset = int(offset) // g
        # primitive normal; a non-integral offset would mean the plane carries
        # no lattice points, which callers never build
        h = 0
        for c in normal:
            h = gcd(h, c)
        if h != 1:
            raise GeometryError(f"cannot make {normal} primitive with integer offset {offset}")
        return cls(normal, offset)

    def value(self, x) -> Fraction | int:
        return sum(w * c for w, c in zip(self.normal, x))

    def contains(self, x) -> bool:
        return self.value(x) >= self.offset

    def on_boundary(self, x) -> bool:
        return self.value(x) == self.offset


def det2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def det3(a, b, c):
    """Determinant of the 3x3 matrix with rows ``a``, ``b``, ``c``."""
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _orient(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class Hull2D:
    vertices: tuple
    dimension: int


def convex_hull_2d(points) -> Hull2D:
    """Counterclockwise hull of planar points (Andrew's monotone chain).

    The cycle starts at the lexicographically smallest point and collinear
    boundary points are dropped.  Degenerate input is reported through
    ``dimension``: a single point gives dimension 0, a segment gives 1 with
    its two endpoints.
    """
    pts = sorted(set(tuple(p) for p in points))
    if not pts:
        raise GeometryError("convex_hull_2d needs at least one point")
    if len(pts) == 1:
        return Hull2D((pts[0],), 0)

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    cycle = lower[:-1] + upper[:-1]
    if len(cycle) <= 2:
        return Hull2D((pts[0], pts[-1]), 1)
    return Hull2D(tuple(cycle), 2)


def polygon_area(vertices) -> Fraction:
    """Shoelace area of a simple polygon given as an ordered cycle."""
    n = len(vertices)
    if n < 3:
        return Fraction(0)
    s = 0
    for i in range(n):
        s += det2(vertices[i], vertices[(i + 1) % n])
    return abs(Fraction(s)) / 2


def polytope_volume_3d(vertices, facets) -> Fraction:
    """Volume of a convex polytope from consistently oriented facet cycles.

    Each facet is a cycle of indices into ``vertices``; it is fanned from its
    first vertex and every triangle forms a tetrahedron with ``vertices[0]``.
    """
    if not vertices:
        return Fraction(0)
    o = vertices[0]
    total = 0
    for cyc in facets:
        if len(cyc) < 3:
            continue
        a = sub(vertices[cyc[0]], o)
        for j in range(1, len(cyc) - 1):
            b = sub(vertices[cyc[j]], o)
            c = sub(vertices[cyc[j + 1]], o)
            total += det3(a, b, c)
    return abs(Fraction(total)) / 6


def _solve3(planes):
    """Cramer's rule on three integer plane equations ``<w, x> = c``.

    Returns ``(X, Y, Z, D)`` with ``D > 0`` so that the point is
    ``(X/D, Y/D, Z/D)``, or ``None`` for a singular system.
    """
    (a, ca), (b, cb), (c, cc) = planes
    bc, ca_, ab = cross(b, c), cross(c, a), cross(a, b)
    d = dot(a, bc)
    if d == 0:
        return None
    xs = [ca * bc[k] + cb * ca_[k] + cc * ab[k] for k in range(3)]
    if d < 0:
        return -xs[0], -xs[1], -xs[2], -d
    return xs[0], xs[1], xs[2], d


def vertex_enumeration(halfspaces: Sequence[Halfspace], n: int = 3) -> list:
    """All vertices of a bounded intersection of halfspaces in dimension 2 or 3.

    Every ``n``-subset of boundary planes with a unique intersection point is
    tried and the point kept when it satisfies every halfspace.  The result is
    sorted and duplicate free.  Raises :class:`GeometryError` when the
    intersection has no vertex or is unbounded.
    """
    return sorted(tuple(Fraction(x, d) for x in num) for *num, d in _vertices_homogeneous(halfspaces, n))


def scaled_vertices(halfspaces: Sequence[Halfspace], n: int = 3):
    """Vertices scaled by the lcm ``L`` of their denominators, as integer
    tuples, together with ``L``; lets callers stay in integer arithmetic."""
    hom = _vertices_homogeneous(halfspaces, n)
    scale = 1
    for *_, d in hom:
        scale = scale * d // gcd(scale, d)
    return sorted(tuple(x * (scale // d) for x in num) for *num, d in hom), scale


def _vertices_homogeneous(halfspaces, n):
    if n not in (2, 3):
        raise GeometryError(f"vertex_enumeration supports n in (2, 3), got {n}")
    data = [(h.normal, h.offset) for h in halfspaces]
    tried = set()
    found = []
    for combo in combinations(data, n):
        if n == 3:
            sol = _solve3(combo)
        else:
            (a, ca), (b, cb) = combo
            d = det2(a, b)
            if d == 0:
                sol = None
            else:
                X, Y = ca * b[1] - a[1] * cb, a[0] * cb - ca * b[0]
                sol = (X, Y, d) if d > 0 else (-X, -Y, -d)
        if sol is None:
            continue
        g = 0
        for v in sol:
            g = gcd(g, v)
        key = tuple(v // g for v in sol)
        if key in tried:
            continue
        tried.add(key)
        *num, d = key
        for w, c in data:
            if sum(wi * xi for wi, xi in zip(w, num)) < c * d:
                break
        else:
            found.append(key)
    if not found:
        raise GeometryError("halfspace intersection is empty")
    _check_bounded([h.normal for h in halfspaces], n)
    return found


def _check_bounded(normals, n):
    # a pointed polyhedron is bounded iff its recession cone {d : <w,d> >= 0}
    # has no extreme ray; extreme rays lie on n-1 boundary planes
    if n == 3:
        cands = [cross(a, b) for a, b in combinations(normals, 2)]
    else:
        cands = [(-w[1], w[0]) for w in normals]
    for d in cands:
        if not any(d):
            continue
        for s in (1, -1):
            if all(s * dot(w, d) >= 0 for w in normals):
                raise GeometryError("halfspace intersection is unbounded")


def order_facet(points, normal) -> tuple:
    """Order coplanar 3D points as a convex cycle, counterclockwise seen from
    the side ``normal`` points to.  Non-extreme points are dropped."""
    # project along the dominant normal component
    k = max(range(3), key=lambda i: abs(normal[i]))
    keep = [i for i in range(3) if i != k]
    proj = {tuple(p[i] for i in keep): p for p in points}
    hull = convex_hull_2d(list(proj))
    cyc = [proj[q] for q in hull.vertices]
    # dropping coordinate k flips orientation when the kept pair is odd
    sign = normal[k] if k != 1 else -normal[k]
    if sign < 0:
        cyc = [cyc[0]] + cyc[:0:-1]
    return tuple(cyc)


def polytope_facets(vertices, halfspaces, scale: int = 1) -> list:
    """Facet cycles (as index lists into ``vertices``) of the polytope cut out
    by ``halfspaces``, oriented outward.  Halfspaces touching fewer than
    three vertices are not facets and are skipped.  ``scale`` multiplies the
    offsets, for vertices produced by :func:`scaled_vertices`."""
    index = {v: i for i, v in enumerate(vertices)}
    seen = set()
    facets = []
    for h in halfspaces:
        w, c = h.normal, h.offset * scale
        tight = [v for v in vertices if w[0] * v[0] + w[1] * v[1] + w[2] * v[2] == c]
        if len(tight) < 3:
            continue
        key = frozenset(tight)
        if key in seen:
            continue
        seen.add(key)
        # the outward normal of {<w,x> >= c} is -w
        cyc = order_facet(tight, tuple(-c for c in w))
        if len(cyc) >= 3:
            facets.append([index[v] for v in cyc])
    return facets
