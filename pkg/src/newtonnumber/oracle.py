"""Independent verification path and the randomized property harness.

The volumes here are computed by slicing, not by polytope fans: the
cross-section of the region under the polyhedron at height ``z`` is a
rectangle minus a convex polygon whose area is quadratic in ``z`` between
consecutive vertex heights, so Simpson's rule per slab is exact.  The
polyhedron clipped to its box has every vertex either in the support or at
a box corner (a vertex away from the upper box faces is a vertex of the
polyhedron itself, and the upper box faces lie entirely inside it), so the
support heights together with ``0`` and ``m_z`` are enough breakpoints.

Random instances come from SplitMix64 so that seeds reproduce anywhere::

    state <- state + 0x9E3779B97F4A7C15            (mod 2**64)
    z <- (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
    z <- (z ^ (z >> 27)) * 0x94D049BB133111EB
    output z ^ (z >> 31)

and ``randint(lo, hi) = lo + output % (hi - lo + 1)``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Callable

from .core import (
    GammaMinusRegion,
    SupportSet,
    build_polyhedron,
    candidate_normals,
    gamma_minus,
    newton_number,
    nu_from_volumes,
)
from .errors import NotConvenient
from .monotonicity import (
    ReasonKind,
    ZeroKind,
    _unit_pyramid,
    classify_skeleton,
    difference_skeleton,
    nu_zero_witness,
)

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.next() % (hi - lo + 1)


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int
    max_intercept: int
    extra_points: int
    dim: int = 3

    def __post_init__(self):
        if self.max_intercept < 1 or self.extra_points < 0 or self.dim not in (2, 3):
            raise ValueError(f"invalid generator config {self}")


# -- slab integration ------------------------------------------------------

def _intercepts(support: SupportSet):
    n = support.dim
    out = []
    for i in range(n):
        hits = [p[i] for p in support.points if all(p[j] == 0 for j in range(n) if j != i)]
        if not hits:
            raise NotConvenient(f"no support point on axis {i}")
        out.append(min(hits))
    return out


def _inequalities(support: SupportSet):
    """Supporting inequalities ``<w, x> >= c`` (w >= 0) whose intersection
    with the orthant is the Newton polyhedron.

    Every facet is spanned by support points and unit rays sharing a base
    point; planes that some support point violates are dropped.  Lower
    dimensional faces may contribute redundant but valid rows.
    """
    pts = support.points
    out = set()
    for w in candidate_normals(pts, support.dim):
        if sum(1 for c in w if c) == 1:
            continue  # coordinate hyperplanes bound the box already
        vals = [sum(a * b for a, b in zip(w, p)) for p in pts]
        c = min(vals)
        if vals.count(c) >= 2:
            g = gcd(*w, c)
            out.add((tuple(x // g for x in w), c // g))
    return sorted(out)


def _clip(poly, a, b, c):
    """Clip a convex polygon by ``a*x + b*y >= c``."""
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        fp = a * p[0] + b * p[1] - c
        fq = a * q[0] + b * q[1] - c
        if fp >= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _area(poly):
    s = 0
    for i in range(len(poly)):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % len(poly)]
        s += x0 * y1 - x1 * y0
    return abs(Fraction(s)) / 2


def _slice_area_under(ineqs, m, z) -> Fraction:
    m1, m2 = Fraction(m[0]), Fraction(m[1])
    poly = [(Fraction(0), Fraction(0)), (m1, Fraction(0)), (m1, m2), (Fraction(0), m2)]
    for w, c in ineqs:
        poly = _clip(poly, w[0], w[1], c - w[2] * z)
        if not poly:
            break
    return m1 * m2 - _area(poly)


def _slab_volume(support: SupportSet) -> Fraction:
    m = _intercepts(support)
    if 0 in m:
        return Fraction(0)
    ineqs = _inequalities(support)
    heights = sorted({Fraction(p[2]) for p in support.points if p[2] <= m[2]} | {Fraction(0), Fraction(m[2])})
    total = Fraction(0)
    f_lo = _slice_area_under(ineqs, m, heights[0])
    for z0, z1 in zip(heights, heights[1:]):
        f_mid = _slice_area_under(ineqs, m, (z0 + z1) / 2)
        f_hi = _slice_area_under(ineqs, m, z1)
        total += (z1 - z0) / 6 * (f_lo + 4 * f_mid + f_hi)
        f_lo = f_hi
    return total


def _trapezoid_area(support: SupportSet) -> Fraction:
    """Area under a 2D convenient Newton polygon by exact trapezoids in ``y``."""
    m = _intercepts(support)
    if 0 in m:
        return Fraction(0)
    ineqs = [(w, c) for w, c in _inequalities(support) if w[0] > 0]

    def width(t):
        x = max([Fraction(c - w[1] * t, w[0]) for w, c in ineqs] + [Fraction(0)])
        return min(x, Fraction(m[0]))

    ts = sorted({Fraction(p[1]) for p in support.points} | {Fraction(0), Fraction(m[1])})
    return sum(((t1 - t0) * (width(t0) + width(t1)) / 2 for t0, t1 in zip(ts, ts[1:])), Fraction(0))


def volume_slab(region: GammaMinusRegion) -> Fraction:
    """Volume under the polyhedron by slicing; shares no code with the fan path."""
    if region.dim == 3:
        return _slab_volume(region.support)
    if region.dim == 2:
        return _trapezoid_area(region.support)
    return Fraction(_intercepts(region.support)[0])


def _sub_support(support: SupportSet, axes):
    pts = [tuple(p[i] for i in axes) for p in support.points
           if all(p[j] == 0 for j in range(support.dim) if j not in axes)]
    return SupportSet.of(pts)


def oracle_volumes(support: SupportSet) -> list:
    """``[V_0, ..., V_n]`` recomputed through slicing."""
    n = support.dim
    m = _intercepts(support)
    vols = [Fraction(0 if 0 in m else 1)]
    for k in range(1, n + 1):
        total = Fraction(0)
        for axes in combinations(range(n), k):
            sub = support if k == n else _sub_support(support, axes)
            if k == 1:
                total += _intercepts(sub)[0]
            elif k == 2:
                total += _trapezoid_area(sub)
            else:
                total += _slab_volume(sub)
        vols.append(total)
    return vols


def nu_oracle(support: SupportSet) -> int:
    return nu_from_volumes(oracle_volumes(support))


# -- random instances --------------------------------------------------------

def _sample_support(rng: SplitMix64, max_intercept: int, extra: int, dim: int) -> SupportSet:
    m = [rng.randint(1, max_intercept) for _ in range(dim)]
    pts = [tuple(m[i] if j == i else 0 for j in range(dim)) for i in range(dim)]
    support = SupportSet.of(pts)
    poly = build_polyhedron(support)
    for _ in range(extra):
        p = tuple(rng.randint(0, mi) for mi in m)
        # points in the hull so far (including dominating ones) are discarded
        if poly.contains(p):
            continue
        support = SupportSet.of(list(support.points) + [p])
        poly = build_polyhedron(support)
    return support


def random_convenient_support(config: GeneratorConfig) -> SupportSet:
    """Axis intercepts uniform in ``[1, M]`` plus up to ``k`` extra box points."""
    rng = SplitMix64(config.seed)
    return _sample_support(rng, config.max_intercept, config.extra_points, config.dim)


def sample_points_under(rng: SplitMix64, poly, count: int, attempts: int = 10) -> list:
    """Up to ``count`` distinct lattice points under ``poly``.

    Box points are drawn uniformly; half of them are then pushed onto a
    coordinate plane, and half of those onto an axis, so that the boundary
    cases where the Newton number can survive are well represented.
    """
    m = poly.axis_intercepts
    seen, out = set(), []
    for _ in range(count * attempts):
        if len(out) >= count:
            break
        p = [rng.randint(0, mi) for mi in m]
        if rng.randint(0, 1):
            p[rng.randint(0, 2)] = 0
            if rng.randint(0, 1):
                p[rng.randint(0, 2)] = 0
        p = tuple(p)
        if p in seen or poly.contains(p):
            continue
        seen.add(p)
        out.append(p)
    return out


# -- cross check ---------------------------------------------------------------

@dataclass
class CheckReport:
    seed: int
    iterations: int = 0
    supports: int = 0
    points: int = 0
    equal: int = 0
    strict: int = 0
    interior: int = 0
    tall_pyramid: int = 0
    multi_apex: int = 0
    nu_zero: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def cross_check(
    config: GeneratorConfig,
    iterations: int,
    points_per_support: int = 20,
    predicate: Callable | None = None,
    oracle_after: bool = True,
) -> CheckReport:
    """Run the property suite on ``iterations`` random supports.

    Per support: Newton number against the slicing oracle, nonnegativity and
    the zero-witness equivalence.  Per added point: monotonicity, criterion
    equivalence with the numeric Newton numbers, consistency of the strict
    reasons, and (with ``oracle_after``) the oracle on the enlarged support.
    ``predicate`` replaces the unit-pyramid test; it exists so the harness can
    be shown to catch a broken criterion.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    predicate = predicate or _unit_pyramid
    master = SplitMix64(config.seed)
    report = CheckReport(seed=config.seed)

    for it in range(iterations):
        seed = master.next()
        rng = SplitMix64(seed)
        support = _sample_support(rng, config.max_intercept, config.extra_points, config.dim)
        report.iterations += 1
        report.supports += 1

        def fail(check, detail="", point=None):
            report.failures.append({
                "iteration": it, "seed": seed, "support": support.as_lists(),
                "point": list(point) if point is not None else None,
                "check": check, "detail": detail,
            })

        poly = build_polyhedron(support)
        if not poly.convenient:
            fail("generator_convenient")
            continue
        region = gamma_minus(poly)
        nu = nu_from_volumes(region.volumes())
        _check_oracle(support, region, nu, fail)
        _check_zero(support, nu, fail)
        if nu == 0:
            report.nu_zero += 1
        if config.dim != 3:
            continue

        for p in sample_points_under(rng, poly, points_per_support):
            report.points += 1
            after = SupportSet.of(list(support.points) + [p])
            nu_after = newton_number(after)
            if nu_after > nu:
                fail("monotonicity", f"{nu} -> {nu_after}", p)
            skel = difference_skeleton(poly, p)
            cls = classify_skeleton(skel, predicate)
            if cls.equal != (nu_after == nu):
                fail("equivalence", f"verdict {cls.relation.value}, nu {nu} -> {nu_after}", p)
            if cls.equal:
                report.equal += 1
            else:
                report.strict += 1
                _check_reasons(cls, p, report, fail)
            _check_zero(after, nu_after, fail, p)
            if oracle_after:
                _check_oracle(after, gamma_minus(build_polyhedron(after)), nu_after, fail, p)
    return report


def _check_oracle(support, region, nu, fail, point=None):
    vols = region.volumes()
    ovols = oracle_volumes(support)
    if ovols[-1] != vols[-1]:
        fail("oracle_volume", f"{ovols[-1]} != {vols[-1]}", point)
    if ovols[:-1] != vols[:-1]:
        fail("oracle_volumes", f"{[str(v) for v in ovols]} != {[str(v) for v in vols]}", point)
    if nu_from_volumes(ovols) != nu:
        fail("oracle_nu", f"{nu_from_volumes(ovols)} != {nu}", point)


def _check_zero(support, nu, fail, point=None):
    if nu < 0:
        fail("nonnegative", str(nu), point)
    w = nu_zero_witness(support)
    if (w.kind is not ZeroKind.POSITIVE) != (nu == 0):
        fail("zero_witness", f"{w.kind.value} with nu {nu}", point)


def _check_reasons(cls, p, report, fail):
    zero_axes = [i for i in (2, 1, 0) if p[i] == 0]
    if cls.interior:
        report.interior += 1
        if zero_axes:
            fail("reason_interior", "interior reason for a point on a coordinate plane", p)
        return
    if [r.axis for r in cls.reasons] != zero_axes:
        fail("reason_planes", f"reasons {[r.axis for r in cls.reasons]} vs planes {zero_axes}", p)
    for r in cls.reasons:
        if r.kind is ReasonKind.TALL_PYRAMID:
            report.tall_pyramid += 1
            if r.height is None or r.height < 2:
                fail("reason_height", str(r.height), p)
        elif r.kind is ReasonKind.MULTI_APEX:
            report.multi_apex += 1
            if r.count < 2:
                fail("reason_count", str(r.count), p)
