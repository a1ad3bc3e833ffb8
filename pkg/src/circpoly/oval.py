"""Ovals: the doubly symmetric representative of an arc-signature class.

An oval has no straight pieces, corners only at the two ends ``A, A'`` of
one symmetry axis, and arc radii increasing from ``A`` to the end ``B`` of
the other axis.  Every non-polygonal signature has exactly one oval up to
congruence; a circular polygon is uniquely composed exactly when it is an
oval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .figure import (
    Arc,
    ArcSignature,
    ConvexChain,
    Corner,
    Element,
    Seg,
    congruent,
    diameter,
    elements_match,
    normalize,
    require_valid,
    signature,
)
from .kernel import DEFAULT_TOL, TAU, GeometryError, Isometry, Point, Tolerance


class NoOvalExists(GeometryError):
    """The signature is that of a polygon (all turning in corners)."""


class RadiusTooSmall(GeometryError):
    pass


class DegenerateCore(GeometryError):
    def __init__(self, msg: str, witness_area: float):
        self.witness_area = witness_area
        super().__init__(f"{msg} (core area {witness_area:.3g})")


@dataclass(frozen=True)
class Line:
    point: Point
    direction: float

    def reflect(self, p) -> Point:
        c, s = math.cos(self.direction), math.sin(self.direction)
        dx, dy = p[0] - self.point[0], p[1] - self.point[1]
        along = dx * c + dy * s
        fx, fy = self.point[0] + along * c, self.point[1] + along * s
        return Point(2 * fx - p[0], 2 * fy - p[1])


@dataclass(frozen=True)
class Oval:
    chain: ConvexChain
    axis_a: Line
    axis_b: Line
    profile: ArcSignature
    a: Point
    a_prime: Point
    b: Point
    b_prime: Point

    @property
    def axis_a_length(self) -> float:
        return math.dist(self.a, self.a_prime)

    @property
    def axis_b_length(self) -> float:
        return math.dist(self.b, self.b_prime)


@dataclass(frozen=True)
class LensSpec:
    radius: float
    omega: float

    def __post_init__(self) -> None:
        if not (self.radius > 0 and 0 < self.omega <= TAU):
            raise ValueError("lens needs radius > 0 and omega in (0, 2pi]")

    def signature(self) -> ArcSignature:
        return ArcSignature(TAU - self.omega, ((self.radius, self.omega),))

    def oval(self) -> Oval:
        return oval_from_profile(self.signature())


def _merged_buckets(sig: ArcSignature, tol: Tolerance) -> list[tuple[float, float]]:
    out: list[tuple[float, float]] = []
    for r, s in sig.arcs:
        if out and r - out[-1][0] <= tol.eps_len:
            r0, s0 = out[-1]
            out[-1] = ((r0 * s0 + r * s) / (s0 + s), s0 + s)
        else:
            out.append((r, s))
    return out


def oval_quarter(sig: ArcSignature, tol: Tolerance = DEFAULT_TOL) -> list[Element]:
    """Quarter boundary from ``A`` to ``B``: half of the corner at ``A``, then
    a quarter of every bucket in increasing radius."""
    q: list[Element] = []
    if sig.corners > tol.eps_ang:
        q.append(Corner(sig.corners / 4))
    q.extend(Arc(r, s / 4) for r, s in _merged_buckets(sig, tol))
    return q


def oval_from_profile(sig: ArcSignature, tol: Tolerance = DEFAULT_TOL) -> Oval:
    if sig.corners >= TAU - tol.eps_ang or not sig.arcs:
        raise NoOvalExists("polygon class: profile is identically 2*pi")
    buckets = _merged_buckets(sig, tol)
    quarter = [Arc(r, s / 4) for r, s in buckets]
    half: list[Element] = []
    if sig.corners > tol.eps_ang:
        half.append(Corner(sig.corners / 2))
    half += quarter + quarter[::-1]
    raw = ConvexChain(Point(0.0, 0.0), 0.0, tuple(half + half))
    poses = raw.poses
    # A sits just after the first corner turn (or at the start when smooth)
    a = poses[0][0]
    a_prime = poses[len(half)][0]
    mid = len(quarter) + (1 if sig.corners > tol.eps_ang else 0)
    b = poses[mid][0]
    b_prime = poses[len(half) + mid][0]
    center = Point((a[0] + a_prime[0]) / 2, (a[1] + a_prime[1]) / 2)
    ang = math.atan2(a_prime[1] - a[1], a_prime[0] - a[0])
    # centre at the origin, A on the negative x-axis
    rot = Isometry(-ang, (0.0, 0.0))
    c0 = rot(center)
    m = Isometry(-ang, (-c0[0], -c0[1]))
    placed = normalize(raw.moved(m), tol)
    origin = Point(0.0, 0.0)
    a, a_prime, b, b_prime = (m(p) for p in (a, a_prime, b, b_prime))
    return Oval(
        chain=placed,
        axis_a=Line(origin, 0.0),
        axis_b=Line(origin, math.pi / 2),
        profile=ArcSignature(sig.corners, tuple(buckets), 0.0),
        a=a, a_prime=a_prime, b=b, b_prime=b_prime,
    )


def oval_clauses(c: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> dict[str, bool]:
    """Check the four defining properties of an oval directly on the chain."""
    require_valid(c, tol)
    cn = normalize(c, tol)
    els = list(cn.elements)
    n = len(els)
    no_segments = not any(isinstance(e, Seg) for e in els)
    corner_idx = [i for i, e in enumerate(els) if isinstance(e, Corner)]
    out = {"no_segments": no_segments, "symmetric_axes": False, "corners_on_axis": False,
           "monotone_radii": False}
    if not no_segments:
        return out
    if n == 1:
        return dict.fromkeys(out, True)
    central = n % 2 == 0 and all(elements_match(els[i], els[(i + n // 2) % n], tol) for i in range(n))
    if len(corner_idx) == 2:
        out["corners_on_axis"] = central and (corner_idx[1] - corner_idx[0]) == n // 2
        k0 = corner_idx[0]
        half = [els[(k0 + 1 + i) % n] for i in range(n // 2 - 1)] if central else []
    elif not corner_idx:
        out["corners_on_axis"] = True
        rmin = min(e.radius for e in els)
        k0 = next(i for i, e in enumerate(els) if e.radius - rmin <= tol.eps_len)
        half = [els[(k0 + 1 + i) % n] for i in range(n // 2 - 1)] if central else []
    else:
        half = []
    palin = bool(half) and len(half) % 2 == 1 and all(
        elements_match(half[i], half[-1 - i], tol) for i in range(len(half) // 2)
    )
    out["symmetric_axes"] = central and palin
    if palin:
        rising = [e.radius for e in half[: len(half) // 2 + 1]]
        if not corner_idx:
            rising = [els[k0].radius] + rising
        out["monotone_radii"] = all(b - a > tol.eps_len for a, b in zip(rising, rising[1:]))
    return out


def is_oval(c: ConvexChain, tol: Tolerance = DEFAULT_TOL, route: str = "congruence") -> bool:
    """Oval test by congruence with the canonical oval, or by the defining clauses.

    ``route="both"`` evaluates both and raises if they disagree.
    """
    require_valid(c, tol)

    def by_congruence() -> bool:
        try:
            v = oval_from_profile(signature(c, tol), tol)
        except NoOvalExists:
            return False
        return congruent(c, v.chain, tol) is not None

    def by_clauses() -> bool:
        return all(oval_clauses(c, tol).values())

    if route == "congruence":
        return by_congruence()
    if route == "clauses":
        return by_clauses()
    a, b = by_congruence(), by_clauses()
    if a != b:
        raise AssertionError(f"oval routes disagree: congruence={a}, clauses={b}")
    return a


def uniquely_composed(c: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> bool:
    return is_oval(c, tol)


def oval_diameter(sig: ArcSignature, tol: Tolerance = DEFAULT_TOL) -> float:
    return diameter(oval_from_profile(sig, tol).chain, tol)


def _outward(h: float) -> tuple[float, float]:
    return math.sin(h), -math.cos(h)


def r_offset(c: ConvexChain, radius: float, tol: Tolerance = DEFAULT_TOL) -> ConvexChain:
    """Boundary of the ``radius``-neighbourhood: arcs grow, corners become arcs."""
    require_valid(c, tol)
    if not radius > 0:
        raise ValueError("offset radius must be positive")
    els: list[Element] = []
    for e in c.elements:
        if isinstance(e, Seg):
            els.append(e)
        elif isinstance(e, Arc):
            els.append(Arc(e.radius + radius, e.sweep))
        else:
            els.append(Arc(radius, e.turn))
    nx, ny = _outward(c.heading)
    start = Point(c.start[0] + radius * nx, c.start[1] + radius * ny)
    return normalize(ConvexChain(start, c.heading, tuple(els)), tol)


def inner_polygon(c: ConvexChain, radius: float, tol: Tolerance = DEFAULT_TOL) -> ConvexChain:
    """Inverse of :func:`r_offset`: the figure whose ``radius``-neighbourhood is ``c``."""
    require_valid(c, tol)
    els: list[Element] = []
    for e in c.elements:
        if isinstance(e, Corner):
            raise RadiusTooSmall("corner (radius 0) cannot be offset inward")
        if isinstance(e, Seg):
            els.append(e)
            continue
        if e.radius < radius - tol.eps_len:
            raise RadiusTooSmall(f"arc radius {e.radius} below offset {radius}")
        if e.radius - radius <= tol.eps_len:
            els.append(Corner(e.sweep))
        else:
            els.append(Arc(e.radius - radius, e.sweep))
    nx, ny = _outward(c.heading)
    start = Point(c.start[0] - radius * nx, c.start[1] - radius * ny)
    out = normalize(ConvexChain(start, c.heading, tuple(els)), tol)
    if any(isinstance(e, Corner) and e.turn >= math.pi - tol.eps_ang for e in out.elements) or all(
        isinstance(e, Corner) for e in out.elements
    ):
        pts = out.vertices
        shoelace = 0.5 * sum(p[0] * q[1] - q[0] * p[1] for p, q in zip(pts, pts[1:] + pts[:1]))
        raise DegenerateCore("inner figure degenerates to a point or segment", abs(shoelace))
    return out
