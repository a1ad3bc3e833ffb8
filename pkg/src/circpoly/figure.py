"""Convex figures bounded by segments and circular arcs, as turning chains.

A figure is stored turtle-style: a start point, an initial heading and a
counterclockwise sequence of straight runs (:class:`Seg`), arcs (:class:`Arc`)
and corner turns (:class:`Corner`).  Convexity is automatic because every
element turns left by a nonnegative amount; a chain is a figure boundary once
its total turning is a full turn and it returns to its start.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np
from scipy.optimize import minimize_scalar

from .kernel import (
    DEFAULT_TOL,
    TAU,
    GeometryError,
    Isometry,
    Point,
    Tolerance,
    compose,
    norm_angle,
    reflection_x,
)
from .region import ArcEdge, ConvexRegion, LineEdge


class InvalidChain(GeometryError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("invalid chain: " + "; ".join(str(v) for v in report.violations))


@dataclass(frozen=True)
class Seg:
    length: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "length", float(self.length))

    @property
    def turning(self) -> float:
        return 0.0


@dataclass(frozen=True)
class Arc:
    radius: float
    sweep: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "sweep", float(self.sweep))

    @property
    def turning(self) -> float:
        return self.sweep


@dataclass(frozen=True)
class Corner:
    turn: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "turn", float(self.turn))

    @property
    def turning(self) -> float:
        return self.turn


Element = Union[Seg, Arc, Corner]


def advance(p, h: float, e: Element) -> tuple[Point, float]:
    """Pose after traversing ``e`` from point ``p`` with heading ``h``."""
    if isinstance(e, Seg):
        return Point(p[0] + e.length * math.cos(h), p[1] + e.length * math.sin(h)), h
    if isinstance(e, Corner):
        return Point(p[0], p[1]), h + e.turn
    r, s = e.radius, e.sweep
    cx, cy = p[0] - r * math.sin(h), p[1] + r * math.cos(h)
    h2 = h + s
    return Point(cx + r * math.sin(h2), cy - r * math.cos(h2)), h2


def arc_center(p, h: float, r: float) -> Point:
    return Point(p[0] - r * math.sin(h), p[1] + r * math.cos(h))


def _same_kind(a: Element, b: Element, tol: Tolerance) -> bool:
    if isinstance(a, Seg) and isinstance(b, Seg):
        return True
    if isinstance(a, Corner) and isinstance(b, Corner):
        return True
    if isinstance(a, Arc) and isinstance(b, Arc):
        return abs(a.radius - b.radius) <= tol.eps_len
    return False


def _merge(a: Element, b: Element) -> Element:
    if isinstance(a, Seg):
        return Seg(a.length + b.length)
    if isinstance(a, Corner):
        return Corner(a.turn + b.turn)
    if a.radius == b.radius:
        return Arc(a.radius, a.sweep + b.sweep)
    s = a.sweep + b.sweep
    return Arc((a.radius * a.sweep + b.radius * b.sweep) / s, s)


def _negligible(e: Element, tol: Tolerance) -> bool:
    if isinstance(e, Seg):
        return e.length <= tol.eps_len
    if isinstance(e, Corner):
        return e.turn <= tol.eps_ang
    return e.sweep <= tol.eps_ang


def elements_match(a: Element, b: Element, tol: Tolerance) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, Seg):
        return abs(a.length - b.length) <= tol.eps_len
    if isinstance(a, Corner):
        return abs(a.turn - b.turn) <= tol.eps_ang
    return abs(a.radius - b.radius) <= tol.eps_len and abs(a.sweep - b.sweep) <= tol.eps_ang


@dataclass(frozen=True)
class Violation:
    invariant: str
    residual: float

    def __str__(self) -> str:
        return f"{self.invariant} (residual {self.residual:.3g})"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def as_dict(self) -> dict:
        return {
            "valid": self.ok,
            "violations": [{"invariant": v.invariant, "residual": v.residual} for v in self.violations],
        }


@dataclass(frozen=True)
class ConvexChain:
    start: Point
    heading: float
    elements: tuple[Element, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", Point(float(self.start[0]), float(self.start[1])))
        object.__setattr__(self, "heading", norm_angle(float(self.heading)))
        object.__setattr__(self, "elements", tuple(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def poses(self) -> tuple[tuple[Point, float], ...]:
        """Pose before each element, plus the final pose (``len + 1`` entries)."""
        p, h = self.start, self.heading
        out = [(p, h)]
        for e in self.elements:
            p, h = advance(p, h, e)
            out.append((p, h))
        return tuple(out)

    @property
    def vertices(self) -> list[Point]:
        return [p for p, _ in self.poses[:-1]]

    @property
    def total_turning(self) -> float:
        return math.fsum(e.turning for e in self.elements)

    @property
    def closure_residual(self) -> float:
        p = self.poses[-1][0]
        return math.hypot(p[0] - self.start[0], p[1] - self.start[1])

    @cached_property
    def perimeter(self) -> float:
        return math.fsum(
            e.length if isinstance(e, Seg) else e.radius * e.sweep if isinstance(e, Arc) else 0.0
            for e in self.elements
        )

    @cached_property
    def edges(self) -> tuple:
        """Absolute boundary edges (corners contribute none)."""
        out = []
        for (p, h), (q, _), e in zip(self.poses, self.poses[1:], self.elements):
            if isinstance(e, Seg):
                out.append(LineEdge(tuple(p), tuple(q)))
            elif isinstance(e, Arc):
                out.append(ArcEdge(tuple(arc_center(p, h, e.radius)), e.radius, tuple(p), tuple(q)))
        return tuple(out)

    @cached_property
    def region(self) -> ConvexRegion:
        return ConvexRegion.from_edges(self.edges)

    def contains(self, pts, margin: float = 0.0) -> np.ndarray:
        return self.region.contains(pts, margin)

    def boundary_points(self, n: int) -> np.ndarray:
        """About ``n`` points spread along the boundary by arc length."""
        per = self.perimeter
        chunks = []
        for edge in self.edges:
            if isinstance(edge, LineEdge):
                ln = math.dist(edge.a, edge.b)
                k = max(1, int(round(n * ln / per)))
                t = np.linspace(0.0, 1.0, k, endpoint=False)[:, None]
                chunks.append(np.asarray(edge.a) * (1 - t) + np.asarray(edge.b) * t)
            else:
                k = max(1, int(round(n * edge.r * edge.sweep / per)))
                chunks.append(edge.points(k)[:-1])
        if not chunks:
            return np.asarray(self.vertices, dtype=float)
        return np.vstack(chunks)

    def rotated_start(self, k: int) -> ConvexChain:
        """Same boundary, traversal starting at element ``k``."""
        k %= max(len(self.elements), 1)
        p, h = self.poses[k]
        return ConvexChain(p, h, self.elements[k:] + self.elements[:k])

    def moved(self, m: Isometry) -> ConvexChain:
        """Image of the figure under a rigid motion (reflections allowed)."""
        c = mirror(self) if m.reflect else self
        rigid = Isometry(m.rotation, m.translation, False)
        return ConvexChain(rigid(c.start), rigid.heading(c.heading), c.elements)

    def normalized(self, tol: Tolerance = DEFAULT_TOL) -> ConvexChain:
        return normalize(self, tol)


def mirror(c: ConvexChain) -> ConvexChain:
    """Reflection across the x-axis, re-traversed counterclockwise."""
    return ConvexChain(
        Point(c.start[0], -c.start[1]), math.pi - c.heading, tuple(reversed(c.elements))
    )


def _combine(a: Element, b: Element, tol: Tolerance) -> Element | None:
    """Single element equivalent to ``a`` followed by ``b``, if there is one."""
    if _same_kind(a, b, tol):
        return _merge(a, b)
    # a vanishing corner next to an arc is absorbed into the arc
    if isinstance(a, Corner) and a.turn <= tol.eps_ang and isinstance(b, Arc):
        return Arc(b.radius, b.sweep + a.turn)
    if isinstance(b, Corner) and b.turn <= tol.eps_ang and isinstance(a, Arc):
        return Arc(a.radius, a.sweep + b.turn)
    return None


def normalize(c: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> ConvexChain:
    """Drop negligible elements and merge mergeable neighbours, cyclically.

    Negligible arcs become corners (their turning is kept), negligible
    segments are dropped, and a vanishing corner between two segments is
    removed so the segments fuse.
    """
    items: list[tuple[tuple, Element]] = []
    for pose, e in zip(c.poses, c.elements):
        if _negligible(e, tol):
            if isinstance(e, Seg):
                continue
            e = Corner(e.turning)
        items.append((pose, e))
    changed = True
    while changed and len(items) > 1:
        changed = False
        n = len(items)
        for i in range(n):
            j = (i + 1) % n
            merged = _combine(items[i][1], items[j][1], tol)
            if merged is None and n > 2:
                k = (i + 2) % n
                a, mid, b = items[i][1], items[j][1], items[k][1]
                if isinstance(mid, Corner) and mid.turn <= tol.eps_ang and isinstance(a, Seg) and isinstance(b, Seg):
                    items[i] = (items[i][0], Seg(a.length + b.length))
                    for idx in sorted({j, k}, reverse=True):
                        del items[idx]
                    changed = True
                    break
            if merged is not None:
                items[i] = (items[i][0], merged)
                del items[j]
                changed = True
                break
    if not items:
        return ConvexChain(c.start, c.heading, ())
    (p, h), _ = items[0]
    return ConvexChain(p, h, tuple(e for _, e in items))


def chain(elements: Iterable[Element], start=(0.0, 0.0), heading: float = 0.0,
          tol: Tolerance = DEFAULT_TOL) -> ConvexChain:
    return normalize(ConvexChain(Point(*start), heading, tuple(elements)), tol)


# --- constructors ------------------------------------------------------------

def polygon(points: Sequence) -> ConvexChain:
    """Chain of a convex polygon given by its vertices (either orientation)."""
    pts = [Point(float(x), float(y)) for x, y in points]
    area2 = sum(p.x * q.y - q.x * p.y for p, q in zip(pts, pts[1:] + pts[:1]))
    if area2 < 0:
        pts = pts[::-1]
    n = len(pts)
    heads = [math.atan2(pts[(i + 1) % n].y - pts[i].y, pts[(i + 1) % n].x - pts[i].x) for i in range(n)]
    els: list[Element] = []
    for i in range(n):
        els.append(Seg(math.dist(pts[i], pts[(i + 1) % n])))
        els.append(Corner(norm_angle(heads[(i + 1) % n] - heads[i])))
    return chain(els, pts[0], heads[0])


def circle(r: float, center=(0.0, 0.0)) -> ConvexChain:
    return ConvexChain(Point(center[0], center[1] - r), 0.0, (Arc(r, TAU),))


def lens(r: float, omega: float) -> ConvexChain:
    """Intersection of two radius-``r`` disks whose two arcs sweep ``omega`` in total."""
    if omega >= TAU:
        return circle(r)
    half = omega / 2.0
    chord = 2.0 * r * math.sin(half / 2.0)
    return chain(
        [Arc(r, half), Corner(math.pi - half), Arc(r, half), Corner(math.pi - half)],
        start=(-chord / 2.0, 0.0),
        heading=-half / 2.0,
    )


def rectangle(w: float, h: float) -> ConvexChain:
    return polygon([(0, 0), (w, 0), (w, h), (0, h)])


def square(s: float = 1.0) -> ConvexChain:
    return rectangle(s, s)


def stadium(r: float, length: float) -> ConvexChain:
    """Radius-``r`` neighbourhood of a segment of the given length."""
    return chain(
        [Seg(length), Arc(r, math.pi), Seg(length), Arc(r, math.pi)],
        start=(0.0, -r),
    )


# --- validation, area ----------------------------------------------------------

def validate(c: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> ValidationReport:
    v: list[Violation] = []
    if not c.elements:
        return ValidationReport((Violation("empty chain", 0.0),))
    for i, e in enumerate(c.elements):
        if isinstance(e, Seg) and not e.length > tol.eps_len:
            v.append(Violation(f"element {i}: segment length not positive", e.length))
        elif isinstance(e, Arc):
            if not e.radius > tol.eps_len:
                v.append(Violation(f"element {i}: arc radius not positive", e.radius))
            if not e.sweep > tol.eps_ang:
                v.append(Violation(f"element {i}: arc sweep not positive", e.sweep))
        elif isinstance(e, Corner) and not (tol.eps_ang < e.turn < math.pi - tol.eps_ang):
            v.append(Violation(f"element {i}: corner turn outside (0, pi)", e.turn))
    n = len(c.elements)
    for i in range(n if n > 1 else 0):
        a, b = c.elements[i], c.elements[(i + 1) % n]
        if isinstance(a, Corner) and isinstance(b, Corner):
            v.append(Violation(f"elements {i},{(i + 1) % n}: consecutive corners", 0.0))
        if isinstance(a, Seg) and isinstance(b, Seg):
            v.append(Violation(f"elements {i},{(i + 1) % n}: consecutive segments", 0.0))
    turn = c.total_turning
    if abs(turn - TAU) > tol.eps_ang * max(1, n):
        v.append(Violation("total turning differs from 2*pi", turn - TAU))
    res = c.closure_residual
    if res > tol.eps_len * max(c.perimeter, 1.0):
        v.append(Violation("chain does not close", res))
    return ValidationReport(tuple(v))


def require_valid(c: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> None:
    rep = validate(c, tol)
    if not rep.ok:
        raise InvalidChain(rep)


def area(c: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> float:
    """Shoelace over element endpoints plus one circular segment per arc."""
    require_valid(c, tol)
    pts = c.vertices
    x0, y0 = pts[0]
    shoelace = math.fsum(
        (p[0] - x0) * (q[1] - y0) - (q[0] - x0) * (p[1] - y0) for p, q in zip(pts, pts[1:] + pts[:1])
    )
    caps = math.fsum(
        0.5 * e.radius ** 2 * (e.sweep - math.sin(e.sweep)) for e in c.elements if isinstance(e, Arc)
    )
    return 0.5 * shoelace + caps


def perimeter(c: ConvexChain) -> float:
    return c.perimeter


def close_residual(c: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> ConvexChain:
    """Absorb a small closure gap into the segment lengths (minimum-norm change).

    Only acts when the gap is above round-off and at most ``eps_len`` per unit
    perimeter; chains without two independent segment directions are returned
    unchanged.
    """
    gap = c.closure_residual
    per = max(c.perimeter, 1.0)
    if gap <= 1e-13 * per or gap > tol.eps_len * per:
        return c
    idx = [i for i, e in enumerate(c.elements) if isinstance(e, Seg)]
    if len(idx) < 2:
        return c
    heads = [c.poses[i][1] for i in idx]
    A = np.array([[math.cos(h) for h in heads], [math.sin(h) for h in heads]])
    if np.linalg.matrix_rank(A, tol=1e-9) < 2:
        return c
    end = c.poses[-1][0]
    r = np.array([c.start[0] - end[0], c.start[1] - end[1]])
    delta = np.linalg.lstsq(A, r, rcond=None)[0]
    els = list(c.elements)
    for i, d in zip(idx, delta):
        els[i] = Seg(els[i].length + float(d))
    return ConvexChain(c.start, c.heading, tuple(els))


# --- signature / profile -----------------------------------------------------

def _bucket(items: Sequence[tuple[float, float]], eps: float) -> list[list[tuple[float, float]]]:
    """Single-linkage grouping of (radius, weight) pairs by radius within ``eps``."""
    groups: list[list[tuple[float, float]]] = []
    for r, w in sorted(items):
        if groups and r - groups[-1][-1][0] <= eps:
            groups[-1].append((r, w))
        else:
            groups.append([(r, w)])
    return groups


@dataclass(frozen=True)
class ArcSignature:
    """Per-radius total turning; radius 0 (corners) kept separately."""

    corners: float
    arcs: tuple[tuple[float, float], ...] = ()
    seg_total: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "arcs", tuple(sorted((float(r), float(s)) for r, s in self.arcs)))

    @classmethod
    def from_map(cls, corners: float, arcs: dict, seg_total: float = 0.0) -> ArcSignature:
        return cls(corners, tuple(arcs.items()), seg_total)

    @property
    def arc_map(self) -> dict[float, float]:
        return dict(self.arcs)

    @property
    def radii(self) -> list[float]:
        return [r for r, _ in self.arcs]

    @property
    def total_sweep(self) -> float:
        return math.fsum(s for _, s in self.arcs)

    @property
    def total(self) -> float:
        return self.corners + self.total_sweep

    def without_segments(self) -> ArcSignature:
        return replace(self, seg_total=0.0)

    def profile(self) -> Profile:
        return Profile(self)

    def positive_part_matches(self, other: ArcSignature, tol: Tolerance = DEFAULT_TOL) -> bool:
        return arc_buckets_match(self.arcs, other.arcs, tol)

    def matches(self, other: ArcSignature, tol: Tolerance = DEFAULT_TOL, segments: bool = False) -> bool:
        ok = abs(self.corners - other.corners) <= tol.eps_ang * 4 and self.positive_part_matches(other, tol)
        if segments:
            ok = ok and abs(self.seg_total - other.seg_total) <= tol.eps_len * max(1, len(self.arcs) + 4)
        return ok

    def as_dict(self) -> dict:
        return {
            "corners": self.corners,
            "arcs": [[r, s] for r, s in self.arcs],
            "segTotal": self.seg_total,
        }


def arc_buckets_match(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Bucketwise comparison of two (radius, sweep) collections.

    Radii from both sides are grouped together, so near-equal radii on
    opposite sides land in the same bucket.
    """
    tagged = [(r, (s, 0.0)) for r, s in a] + [(r, (0.0, s)) for r, s in b]
    groups: list[list] = []
    for r, w in sorted(tagged, key=lambda t: t[0]):
        if groups and r - groups[-1][-1][0] <= tol.eps_len:
            groups[-1].append((r, w))
        else:
            groups.append([(r, w)])
    for g in groups:
        sa = math.fsum(w[0] for _, w in g)
        sb = math.fsum(w[1] for _, w in g)
        if abs(sa - sb) > tol.eps_ang * max(1, len(g)):
            return False
    return True


def signature(c: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> ArcSignature:
    require_valid(c, tol)
    corners = math.fsum(e.turn for e in c.elements if isinstance(e, Corner))
    segs = math.fsum(e.length for e in c.elements if isinstance(e, Seg))
    arcs = [(e.radius, e.sweep) for e in c.elements if isinstance(e, Arc)]
    buckets = []
    for g in _bucket(arcs, tol.eps_len):
        s = math.fsum(w for _, w in g)
        r = math.fsum(r * w for r, w in g) / s
        if len({r for r, _ in g}) == 1:
            r = g[0][0]
        buckets.append((r, s))
    return ArcSignature(corners, tuple(buckets), segs)


@dataclass(frozen=True)
class Profile:
    """Right-continuous step map radius -> boundary turning with radius <= r."""

    signature: ArcSignature

    @property
    def breakpoints(self) -> list[tuple[float, float]]:
        out = [(0.0, self.signature.corners)]
        acc = self.signature.corners
        for r, s in self.signature.arcs:
            acc += s
            out.append((r, acc))
        return out

    def __call__(self, r: float) -> float:
        if r < 0:
            return 0.0
        radii = self.signature.radii
        k = bisect.bisect_right(radii, r)
        return self.signature.corners + math.fsum(s for _, s in self.signature.arcs[:k])


def profile(c: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> Profile:
    return Profile(signature(c, tol))


# --- decisions -----------------------------------------------------------------

def boundary_stably_equidecomposable(f: ConvexChain, g: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> bool:
    return signature(f, tol).positive_part_matches(signature(g, tol), tol)


def area_scale(*figs: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> float:
    return max(area(f, tol) for f in figs)


def areas_match(f: ConvexChain, g: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> bool:
    a, b = area(f, tol), area(g, tol)
    return abs(a - b) <= tol.eps_area * max(a, b)


def equidecomposable(f: ConvexChain, g: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> bool:
    return areas_match(f, g, tol) and boundary_stably_equidecomposable(f, g, tol)


def congruent(f: ConvexChain, g: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> Isometry | None:
    """A motion carrying ``f`` onto ``g``, or ``None``.

    Matches the cyclic element sequences up to rotation of the start and
    orientation reversal, then checks the witness against ``g``'s vertices.
    """
    require_valid(f, tol)
    require_valid(g, tol)
    fn, gn = normalize(f, tol), normalize(g, tol)
    n = len(fn.elements)
    if n != len(gn.elements):
        return None
    scale = max(fn.perimeter, gn.perimeter, 1.0)
    target = np.asarray(gn.vertices)
    for mirrored in (False, True):
        src = mirror(fn) if mirrored else fn
        for k in range(n):
            if not all(elements_match(src.elements[(k + i) % n], gn.elements[i], tol) for i in range(n)):
                continue
            m = Isometry.from_poses(src.poses[k], (gn.start, gn.heading))
            if mirrored:
                m = compose(m, reflection_x())
            moved = fn.moved(m)
            # compare vertex sets, order-free
            mv = np.asarray(moved.vertices)
            d = np.min(np.hypot(mv[:, None, 0] - target[None, :, 0], mv[:, None, 1] - target[None, :, 1]), axis=1)
            if n == 1:
                d = np.array([_point_to_boundary(moved.start, gn)])
            if float(d.max()) <= 10 * tol.eps_len * scale:
                return m
    return None


def _point_to_boundary(p, c: ConvexChain) -> float:
    """Distance from ``p`` to a one-element (circle) boundary."""
    e = c.elements[0]
    ctr = arc_center(c.start, c.heading, e.radius)
    return abs(math.dist(p, ctr) - e.radius)


# --- support function, width, diameter -------------------------------------

@dataclass(frozen=True)
class SupportTable:
    """Boundary features indexed by outward-normal angle.

    Corners are radius-0 features; arcs carry their center and radius.  Feature
    ``k`` supports normal angles ``psi0 + [ends[k-1], ends[k])``.
    """

    psi0: float
    ends: np.ndarray
    centers: np.ndarray
    radii: np.ndarray

    def feature(self, psi) -> np.ndarray:
        t = np.mod(np.asarray(psi, dtype=float) - self.psi0, TAU)
        return np.minimum(np.searchsorted(self.ends, t, side="right"), len(self.ends) - 1)

    def __call__(self, psi) -> np.ndarray:
        psi = np.asarray(psi, dtype=float)
        k = self.feature(psi)
        c = self.centers[k]
        return c[..., 0] * np.cos(psi) + c[..., 1] * np.sin(psi) + self.radii[k]

    def point(self, psi) -> np.ndarray:
        psi = np.asarray(psi, dtype=float)
        k = self.feature(psi)
        r = self.radii[k]
        return self.centers[k] + r[..., None] * np.stack([np.cos(psi), np.sin(psi)], axis=-1)

    def breakpoints(self) -> np.ndarray:
        return np.mod(self.psi0 + np.concatenate([[0.0], self.ends[:-1]]), TAU)


def support_table(c: ConvexChain) -> SupportTable:
    ends, centers, radii = [], [], []
    acc = 0.0
    for (p, h), e in zip(c.poses, c.elements):
        if isinstance(e, Seg):
            continue
        acc += e.turning
        ends.append(acc)
        if isinstance(e, Corner):
            centers.append((p[0], p[1]))
            radii.append(0.0)
        else:
            centers.append(tuple(arc_center(p, h, e.radius)))
            radii.append(e.radius)
    ends[-1] = TAU + 1.0  # guard the wrap-around
    return SupportTable(c.heading - math.pi / 2, np.asarray(ends), np.asarray(centers, dtype=float),
                        np.asarray(radii))


def _width_candidates(tab: SupportTable) -> np.ndarray:
    bps = np.unique(np.mod(np.concatenate([tab.breakpoints(), tab.breakpoints() + math.pi]), math.pi))
    bps = np.concatenate([bps, [bps[0] + math.pi]])
    mids = 0.5 * (bps[:-1] + bps[1:])
    k1, k2 = tab.feature(mids), tab.feature(mids + math.pi)
    d = tab.centers[k1] - tab.centers[k2]
    crit = np.arctan2(d[:, 1], d[:, 0])
    cands = [bps]
    for shift in (0.0, math.pi):
        t = np.mod(crit + shift - bps[:-1], math.pi) + bps[:-1]
        inside = t < bps[1:]
        cands.append(t[inside])
    return np.concatenate(cands)


def width_function(c: ConvexChain, psi) -> np.ndarray:
    tab = support_table(c)
    psi = np.asarray(psi, dtype=float)
    return tab(psi) + tab(psi + math.pi)


def diameter(c: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> float:
    require_valid(c, tol)
    tab = support_table(c)
    t = _width_candidates(tab)
    return float(np.max(tab(t) + tab(t + math.pi)))


def width(c: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> float:
    require_valid(c, tol)
    tab = support_table(c)
    t = _width_candidates(tab)
    return float(np.min(tab(t) + tab(t + math.pi)))


# --- moments and canonical pose ------------------------------------------------

_GL_X, _GL_W = np.polynomial.legendre.leggauss(12)


def moments(c: ConvexChain) -> tuple[float, np.ndarray, np.ndarray]:
    """Area, centroid and central second-moment matrix of the region."""
    ox, oy = c.start
    xs, ys, dxs, dys, ws = [], [], [], [], []
    for edge in c.edges:
        if isinstance(edge, LineEdge):
            a, b = np.asarray(edge.a), np.asarray(edge.b)
            t = 0.5 * (_GL_X + 1.0)
            pts = a + np.outer(t, b - a)
            xs.append(pts[:, 0]); ys.append(pts[:, 1])
            dxs.append(np.full_like(t, b[0] - a[0])); dys.append(np.full_like(t, b[1] - a[1]))
            ws.append(0.5 * _GL_W)
        else:
            t0 = math.atan2(edge.a[1] - edge.center[1], edge.a[0] - edge.center[0])
            n = max(1, math.ceil(edge.sweep / (math.pi / 4)))
            step = edge.sweep / n
            for j in range(n):
                th = t0 + j * step + 0.5 * step * (_GL_X + 1.0)
                xs.append(edge.center[0] + edge.r * np.cos(th))
                ys.append(edge.center[1] + edge.r * np.sin(th))
                dxs.append(-edge.r * np.sin(th) * step)
                dys.append(edge.r * np.cos(th) * step)
                ws.append(0.5 * _GL_W)
    x = np.concatenate(xs) - ox
    y = np.concatenate(ys) - oy
    dx, dy, w = np.concatenate(dxs), np.concatenate(dys), np.concatenate(ws)
    A = float(np.sum(w * x * dy))
    sx = float(np.sum(w * x * x / 2 * dy))
    sy = float(np.sum(-w * y * y / 2 * dx))
    ixx = float(np.sum(w * x ** 3 / 3 * dy))
    iyy = float(np.sum(-w * y ** 3 / 3 * dx))
    ixy = float(np.sum(w * x * x * y / 2 * dy))
    cx, cy = sx / A, sy / A
    cov = np.array([[ixx - A * cx * cx, ixy - A * cx * cy], [ixy - A * cx * cy, iyy - A * cy * cy]])
    return A, np.array([cx + ox, cy + oy]), cov


def canonical_pose(c: ConvexChain) -> tuple[Isometry, bool]:
    """Motion putting the centroid at the origin and the major axis on +x.

    The flag reports a (near) isotropic inertia tensor, for which the axis
    is not determined by the moments.
    """
    _, ctr, cov = moments(c)
    vals, vecs = np.linalg.eigh(cov)
    major = vecs[:, 1]
    ang = math.atan2(major[1], major[0])
    isotropic = abs(vals[1] - vals[0]) <= 1e-7 * abs(vals[1] + vals[0])
    rot = Isometry(-ang, (0.0, 0.0))
    t = rot(ctr)
    return Isometry(-ang, (-t[0], -t[1])), isotropic


def canonical(c: ConvexChain) -> ConvexChain:
    return c.moved(canonical_pose(c)[0])


def _support_gap(tf: SupportTable, tg: SupportTable, n: int, refine: bool = True) -> float:
    psi = np.linspace(0.0, TAU, n, endpoint=False)
    gap = np.abs(tf(psi) - tg(psi))
    best = float(gap.max())
    if not refine:
        return best
    # refine around the top samples
    step = TAU / n
    for i in np.argsort(gap)[-4:]:
        res = minimize_scalar(lambda t: -abs(float(tf(t) - tg(t))),
                              bounds=(psi[i] - step, psi[i] + step), method="bounded",
                              options={"xatol": 1e-12})
        best = max(best, -float(res.fun))
    return best


def _order_key(c: ConvexChain) -> tuple:
    return (round(area(c), 9), round(c.perimeter, 9), len(c.elements), repr(normalize(c).elements))


def hausdorff_distance(f: ConvexChain, g: ConvexChain, samples: int = 4096,
                       tol: Tolerance = DEFAULT_TOL, align: bool = True) -> float:
    """Hausdorff distance of the two convex regions.

    For convex sets this is the sup-norm distance of the support functions.
    With ``align`` both figures are first put in canonical pose and the
    remaining pose ambiguity (axis sign, mirror image, and the free rotation
    of an isotropic figure) is minimized over.
    """
    require_valid(f, tol)
    require_valid(g, tol)
    if not align:
        return _support_gap(support_table(f), support_table(g), samples)
    # a fixed argument order makes the numerical search symmetric
    if _order_key(g) < _order_key(f):
        f, g = g, f
    mf, iso_f = canonical_pose(f)
    mg, iso_g = canonical_pose(g)
    fc = f.moved(mf)
    tf = support_table(fc)
    gc = g.moved(mg)
    candidates = []
    for refl in (False, True):
        for rot in (0.0, math.pi):
            candidates.append(Isometry(rot, (0.0, 0.0), refl))
    disk = len(normalize(f, tol).elements) == 1 or len(normalize(g, tol).elements) == 1
    if (iso_f or iso_g) and not disk:
        coarse = []
        for refl in (False, True):
            for k in range(180):
                coarse.append(Isometry(TAU * k / 180, (0.0, 0.0), refl))
        scored = sorted(coarse, key=lambda m: _support_gap(tf, support_table(gc.moved(m)), 256, refine=False))
        for m0 in scored[:2]:
            res = minimize_scalar(
                lambda a: _support_gap(tf, support_table(gc.moved(Isometry(m0.rotation + a, (0, 0), m0.reflect))), 512),
                bounds=(-TAU / 180, TAU / 180), method="bounded", options={"xatol": 1e-10})
            candidates.append(Isometry(m0.rotation + float(res.x), (0.0, 0.0), m0.reflect))
    return min(_support_gap(tf, support_table(gc.moved(m)), samples) for m in candidates)
