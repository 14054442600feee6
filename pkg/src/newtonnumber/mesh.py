"""Triangulated boundary of the region under a convenient 3D Newton polyhedron.

The boundary consists of the compact facets and of the region's traces on
the three coordinate planes.  Each trace is star shaped from the origin, so
it is fanned from there.  Triangles are oriented with normals pointing out
of the region.
"""

from __future__ import annotations

from fractions import Fraction
from typing import TextIO

from .core import SupportSet, build_polyhedron, gamma_minus, restrict
from .errors import MalformedInput
from .exactgeom import cross, dot, sub


def _oriented(tri, outward):
    a, b, c = tri
    n = cross(sub(b, a), sub(c, a))
    return (a, c, b) if dot(n, outward) < 0 else tri


def gamma_minus_mesh(support: SupportSet):
    """``(vertices, triangles)``; vertices are integer 3-tuples and triangles
    index into them (0-based)."""
    if support.dim != 3:
        raise MalformedInput("mesh export needs a support in dimension 3")
    poly = build_polyhedron(support)
    region = gamma_minus(poly)
    tris = []
    if not region.empty:
        for f in poly.compact_facets:
            vs = f.vertices
            for j in range(1, len(vs) - 1):
                tris.append(_oriented((vs[0], vs[j], vs[j + 1]), f.halfspace.normal))
        for k in range(3):
            i, j = (a for a in range(3) if a != k)
            chain = sorted(restrict(support, (i, j)).points, reverse=True)

            def lift(q):
                p = [0, 0, 0]
                p[i], p[j] = q
                return tuple(p)

            outward = tuple(-int(a == k) for a in range(3))
            origin = (0, 0, 0)
            for q0, q1 in zip(chain, chain[1:]):
                tris.append(_oriented((origin, lift(q0), lift(q1)), outward))
    index = {}
    faces = []
    for tri in tris:
        faces.append(tuple(index.setdefault(v, len(index)) for v in tri))
    return list(index), faces


def _decimal(c) -> str:
    return repr(float(Fraction(c)))


def write_obj(fh: TextIO, vertices, faces, comment: str | None = None) -> None:
    if comment:
        fh.write(f"# {comment}\n")
    for v in vertices:
        fh.write("v " + " ".join(_decimal(c) for c in v) + "\n")
    for f in faces:
        fh.write("f " + " ".join(str(i + 1) for i in f) + "\n")
