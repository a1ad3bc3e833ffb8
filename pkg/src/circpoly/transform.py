"""Area-decreasing surgeries on centrally symmetric figures, and generators.

All surgeries act on the normalized turning chain; indices in
:class:`SegmentPair` / :class:`CornerPair` refer to ``normalize(c).elements``.
Because every operated-on figure is centrally symmetric (its element list
repeats after half a cycle), closure of the result is automatic as long as
the edit is applied to both halves alike.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq
from scipy.spatial import ConvexHull

from .figure import (
    Arc,
    ArcSignature,
    ConvexChain,
    Corner,
    Element,
    Seg,
    area,
    diameter,
    elements_match,
    normalize,
    polygon,
    require_valid,
    validate,
)
from .kernel import DEFAULT_TOL, TAU, GeometryError, Point, Tolerance, cross
from .oval import Oval, oval_quarter


class NotCentrallySymmetric(GeometryError):
    pass


class NotAPair(GeometryError):
    pass


class NotCorners(GeometryError):
    pass


class DegenerateResult(GeometryError):
    pass


class FoldOver(GeometryError):
    def __init__(self, max_theta: float):
        self.max_theta = max_theta
        super().__init__(f"shift would fold the figure; largest feasible angle {max_theta:.6g}")


class WrongCornerCount(GeometryError):
    pass


class NoArcs(GeometryError):
    pass


class NotAntipodal(GeometryError):
    pass


class DiameterMismatch(GeometryError):
    pass


class InfeasibleSignature(GeometryError):
    pass


@dataclass(frozen=True)
class SegmentPair:
    i: int
    j: int


@dataclass(frozen=True)
class CornerPair:
    i: int
    j: int


@dataclass(frozen=True)
class SurgeryResult:
    figure: ConvexChain
    area_delta: float
    signature_delta: dict = field(default_factory=dict)
    certificate: dict = field(default_factory=dict)


@dataclass(frozen=True)
class PointOnBoundary:
    """Boundary point located by its tangent-turning parameter.

    ``t`` is the turning accumulated from the chain start (in [0, 2pi));
    ``heading`` is the absolute tangent direction of the supporting line.
    At a corner any ``t`` inside the corner's turn names the vertex.
    """

    t: float
    point: Point
    heading: float


def _sym(c: ConvexChain, tol: Tolerance) -> ConvexChain:
    cn = normalize(c, tol)
    if central_symmetry(cn, tol) is None:
        raise NotCentrallySymmetric("element list is not invariant under a half-cycle shift")
    return cn


def central_symmetry(c: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> Point | None:
    require_valid(c, tol)
    cn = normalize(c, tol)
    els = cn.elements
    n = len(els)
    if n == 1:
        e = els[0]
        p, h = cn.start, cn.heading
        return Point(p[0] - e.radius * math.sin(h), p[1] + e.radius * math.cos(h))
    if n % 2 or not all(elements_match(els[i], els[i + n // 2], tol) for i in range(n // 2)):
        return None
    p, q = cn.poses[0][0], cn.poses[n // 2][0]
    return Point((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)


def segment_pairs(c: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> list[SegmentPair]:
    cn = _sym(c, tol)
    n = len(cn.elements)
    return [SegmentPair(i, i + n // 2) for i in range(n // 2) if isinstance(cn.elements[i], Seg)]


def corner_pairs(c: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> list[CornerPair]:
    cn = _sym(c, tol)
    n = len(cn.elements)
    if n == 1:
        return []
    return [CornerPair(i, i + n // 2) for i in range(n // 2) if isinstance(cn.elements[i], Corner)]


def excise_parallelogram(c: ConvexChain, pair: SegmentPair, tol: Tolerance = DEFAULT_TOL) -> SurgeryResult:
    """Cut out the parallelogram spanned by a symmetric segment pair and glue the rest."""
    cn = _sym(c, tol)
    els = cn.elements
    n = len(els)
    i, j = pair.i % n, pair.j % n
    if not (isinstance(els[i], Seg) and isinstance(els[j], Seg) and (j - i) % n == n // 2):
        raise NotAPair(f"elements {pair.i},{pair.j} are not a symmetric segment pair")
    verts = cn.poses
    a, b = verts[i][0], verts[i + 1][0]
    a2, b2 = verts[j][0], verts[j + 1][0]
    para = abs(cross(a, b, a2))
    order = [(i + 1 + k) % n for k in range(n - 1)]
    kept = [els[k] for k in order if k != j]
    p, h = verts[(i + 1) % n]
    raw = ConvexChain(p, h, tuple(kept))
    out = normalize(raw, tol)
    rep = validate(out, tol)
    if not rep.ok or not any(not isinstance(e, Seg) for e in out.elements):
        raise DegenerateResult("excision leaves a degenerate figure: " + "; ".join(map(str, rep.violations)))
    delta = area(out, tol) - area(cn, tol)
    seg_len = els[i].length
    return SurgeryResult(
        out,
        delta,
        {"segTotal": -2.0 * seg_len, "arcs": {}},
        {"cuts": [[list(b), list(a2)], [list(b2), list(a)]], "parallelogram_area": para,
         "glue_translation": [a[0] - b[0], a[1] - b[1]]},
    )


def _angle_at(p, q, r) -> float:
    """Interior angle at ``q`` of the path p-q-r."""
    v1 = (p[0] - q[0], p[1] - q[1])
    v2 = (r[0] - q[0], r[1] - q[1])
    return math.atan2(abs(v1[0] * v2[1] - v1[1] * v2[0]), v1[0] * v2[0] + v1[1] * v2[1])


def hinge_shift(
    c: ConvexChain,
    pairs: tuple[CornerPair, CornerPair],
    tol: Tolerance = DEFAULT_TOL,
    theta: float | None = None,
) -> SurgeryResult:
    """Shear the hinged parallelogram on two symmetric corner pairs.

    The pair whose parallelogram angle is obtuse (``B``) is straightened:
    its turn moves onto the other pair (``A``).  With ``theta`` given, only
    that much turn is moved.
    """
    cn = _sym(c, tol)
    els = cn.elements
    n = len(els)
    pa, pb = pairs
    for pr in (pa, pb):
        i, j = pr.i % n, pr.j % n
        if not (isinstance(els[i], Corner) and isinstance(els[j], Corner) and (j - i) % n == n // 2):
            raise NotCorners(f"elements {pr.i},{pr.j} are not a symmetric corner pair")
    ia, ib = pa.i % n, pb.i % n
    if ia == ib or ia == (ib + n // 2) % n:
        raise NotCorners("the two pairs coincide")
    # order so that A, B, A', B' run counterclockwise
    if not 0 < (ib - ia) % n < n // 2:
        ib = (ib + n // 2) % n
    ia2, ib2 = (ia + n // 2) % n, (ib + n // 2) % n
    P = [q for q, _ in cn.poses[:-1]]
    ang_b = _angle_at(P[ia], P[ib], P[ia2])
    tie = abs(ang_b - math.pi / 2) <= tol.eps_ang
    swapped = False
    if ang_b < math.pi / 2 - tol.eps_ang:
        ia, ib, ia2, ib2 = ib, ia2, ib2, ia
        ang_b = math.pi - ang_b
        swapped = True
    t_a, t_b = els[ia].turn, els[ib].turn
    max_theta = min(t_b, math.pi - ang_b - tol.eps_ang, math.pi - t_a - tol.eps_ang)
    if theta is None:
        if max_theta < t_b:
            raise FoldOver(max(max_theta, 0.0))
        theta = t_b
    elif not 0.0 <= theta <= max_theta + 1e-15:
        raise FoldOver(max(max_theta, 0.0))
    new = list(els)
    new[ia] = Corner(t_a + theta)
    new[ia2] = Corner(t_a + theta)
    new[ib] = Corner(t_b - theta)
    new[ib2] = Corner(t_b - theta)
    out = normalize(ConvexChain(cn.start, cn.heading, tuple(new)), tol)
    require_valid(out, tol)
    ab = math.dist(P[ia], P[ib])
    ba2 = math.dist(P[ib], P[ia2])
    predicted = ab * ba2 * (math.sin(ang_b + theta) - math.sin(ang_b))
    delta = area(out, tol) - area(cn, tol)
    return SurgeryResult(
        out,
        delta,
        {"corners": 0.0, "arcs": {}},
        {
            "cuts": [[list(P[x]), list(P[y])] for x, y in ((ia, ib), (ib, ia2), (ia2, ib2), (ib2, ia))],
            "theta": theta,
            "angle_before": ang_b,
            "angle_after": ang_b + theta,
            "predicted_area_delta": predicted,
            "straightened_pair": [ib, ib2],
            "roles_swapped": swapped,
            "right_angle_tie": tie,
        },
    )


def _turning_intervals(cn: ConvexChain):
    """(kind, start, end, element index) per element in turning parameter."""
    out = []
    acc = 0.0
    for k, e in enumerate(cn.elements):
        out.append((e, acc, acc + e.turning, k))
        acc += e.turning
    return out


def _arc_measure(cn: ConvexChain, t: float) -> float:
    """Arc sweep met between turning parameter 0 and ``t`` (any real ``t``)."""
    omega = math.fsum(e.sweep for e in cn.elements if isinstance(e, Arc))
    cycles, r = divmod(t, TAU)
    acc = cycles * omega
    for e, s0, s1, _ in _turning_intervals(cn):
        if isinstance(e, Arc):
            acc += min(max(r - s0, 0.0), s1 - s0)
    return acc


_SEG_SLACK = 1e-12


def _offset(s: float, t: float) -> float:
    """Signed turning from ``t`` to ``s`` reduced to [-pi, pi)."""
    return (s - t + math.pi) % TAU - math.pi


def _point_at(cn: ConvexChain, t: float) -> PointOnBoundary:
    t = t % TAU
    heading = (cn.heading + t) % TAU
    for e, s0, s1, k in _turning_intervals(cn):
        # a segment at exactly this heading: take its first endpoint
        if isinstance(e, Seg) and abs(_offset(s0, t)) <= _SEG_SLACK:
            return PointOnBoundary(t, cn.poses[k][0], heading)
    for e, s0, s1, k in _turning_intervals(cn):
        if isinstance(e, Seg):
            continue
        if s0 <= t < s1 or k == len(cn.elements) - 1:
            p, h = cn.poses[k]
            if isinstance(e, Arc):
                u = min(max(t - s0, 0.0), e.sweep)
                cx, cy = p[0] - e.radius * math.sin(h), p[1] + e.radius * math.cos(h)
                pt = Point(cx + e.radius * math.sin(h + u), cy - e.radius * math.cos(h + u))
            else:
                pt = Point(p[0], p[1])
            return PointOnBoundary(t, pt, heading)
    raise AssertionError("turning parameter not covered")


def balance_points(c: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> tuple[PointOnBoundary, PointOnBoundary]:
    """Antipodal support points splitting the arc measure evenly.

    The arc sweep between support directions ``t`` and ``t + pi`` is a
    continuous, piecewise linear function of ``t`` whose imbalance changes
    sign over half a turn, so a root is bracketed on ``[0, pi]``.
    """
    require_valid(c, tol)
    cn = normalize(c, tol)
    omega = _arc_measure(cn, TAU)

    def imbalance(t: float) -> float:
        alpha = _arc_measure(cn, t + math.pi) - _arc_measure(cn, t)
        return 2.0 * alpha - omega

    f0 = imbalance(0.0)
    if abs(f0) <= tol.eps_ang:
        t = 0.0
    else:
        t = brentq(imbalance, 0.0, math.pi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    a = _point_at(cn, t)
    b = _point_at(cn, t + math.pi)
    return (PointOnBoundary(a.t, a.point, a.heading), PointOnBoundary(b.t, b.point, b.heading))


def arc_split(c: ConvexChain, a: PointOnBoundary, b: PointOnBoundary, tol: Tolerance = DEFAULT_TOL):
    """Arc sweep on the boundary from ``a`` to ``b`` and from ``b`` to ``a``."""
    cn = normalize(c, tol)
    tb = b.t if b.t >= a.t else b.t + TAU
    alpha = _arc_measure(cn, tb) - _arc_measure(cn, a.t)
    return alpha, _arc_measure(cn, TAU) - alpha


def _subchain(cn: ConvexChain, t0: float, t1: float) -> list[Element]:
    """Elements met while the turning parameter runs over [t0, t1) (unrolled)."""
    out: list[Element] = []
    for cycle in (-TAU, 0.0, TAU):
        for e, s0, s1, _ in _turning_intervals(cn):
            s0, s1 = s0 + cycle, s1 + cycle
            if isinstance(e, Seg):
                # a segment at the cut direction belongs to the half it starts
                if -_SEG_SLACK <= s0 - t0 < t1 - t0 - _SEG_SLACK:
                    out.append(e)
                continue
            lo, hi = max(s0, t0), min(s1, t1)
            if hi > lo:
                part = hi - lo
                out.append(Arc(e.radius, part) if isinstance(e, Arc) else Corner(part))
    return out


def double(c: ConvexChain, a: PointOnBoundary, b: PointOnBoundary, tol: Tolerance = DEFAULT_TOL):
    """Cut along ``ab`` and complete each side with its point reflection."""
    require_valid(c, tol)
    cn = normalize(c, tol)
    gap = (b.t - a.t) % TAU
    if abs(gap - math.pi) > tol.eps_ang:
        raise NotAntipodal(f"support lines differ from parallel by {abs(gap - math.pi):.3g} rad")
    out = []
    for t0, pt in ((a.t, a.point), (a.t + math.pi, b.point)):
        half = _subchain(cn, t0, t0 + math.pi)
        fig = normalize(ConvexChain(pt, cn.heading + t0, tuple(half + half)), tol)
        rep = validate(fig, tol)
        if not rep.ok:
            raise DegenerateResult("doubled half is degenerate: " + "; ".join(map(str, rep.violations)))
        out.append(fig)
    return out[0], out[1]


def round_corners(c: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> SurgeryResult:
    """Replace the single corner pair by arcs of the smallest arc radius."""
    cn = _sym(c, tol)
    corners = [k for k, e in enumerate(cn.elements) if isinstance(e, Corner)]
    if len(corners) != 2:
        raise WrongCornerCount(f"need exactly one corner pair, found {len(corners)} corners")
    radii = [e.radius for e in cn.elements if isinstance(e, Arc)]
    if not radii:
        raise NoArcs("no arcs to take a fillet radius from")
    r1 = min(radii)
    alpha = cn.elements[corners[0]].turn
    new = [Arc(r1, e.turn) if isinstance(e, Corner) else e for e in cn.elements]
    out = normalize(ConvexChain(cn.start, cn.heading, tuple(new)), tol)
    require_valid(out, tol)
    delta = area(out, tol) - area(cn, tol)
    chord = 2 * r1 * math.sin(alpha / 2)
    return SurgeryResult(
        out,
        delta,
        {"corners": -2 * alpha, "arcs": {r1: 2 * alpha}},
        {"fillet_radius": r1, "corner_turn": alpha, "area_added": delta,
         "fillet_chord": chord},
    )


def quarter_reassemble(v_minus: Oval, v_plus: Oval, tol: Tolerance = DEFAULT_TOL) -> ConvexChain:
    """Glue two quarters of each oval along their equal corner half-axes.

    The half boundary runs over a mirrored quarter of ``v_plus`` to the
    shared corner point and on over a quarter of ``v_minus``; the point
    reflection of this half closes the figure.
    """
    d1, d2 = diameter(v_minus.chain, tol), diameter(v_plus.chain, tol)
    scale = max(d1, d2, 1.0)
    if abs(d1 - d2) > 10 * tol.eps_len * scale:
        raise DiameterMismatch(f"diameters {d1:.12g} and {d2:.12g} differ")
    if abs(v_minus.axis_a_length - v_plus.axis_a_length) > 10 * tol.eps_len * scale:
        raise DiameterMismatch("corner axes differ in length")
    q_minus = oval_quarter(v_minus.profile, tol)
    q_plus = oval_quarter(v_plus.profile, tol)
    half = q_plus[::-1] + q_minus
    out = normalize(ConvexChain(Point(0.0, 0.0), 0.0, tuple(half + half)), tol)
    require_valid(out, tol)
    return out


# --- generators ------------------------------------------------------------

def _split(total: float, parts: int, rng: np.random.Generator, floor: float) -> list[float]:
    if parts <= 1 or total < parts * floor * 4:
        return [total]
    w = rng.dirichlet(np.ones(parts)) * (total - parts * floor) + floor
    w *= total / w.sum()
    return [float(x) for x in w]


def random_centrally_symmetric(sig: ArcSignature, seed: int, tol: Tolerance = DEFAULT_TOL,
                               max_tries: int = 200) -> ConvexChain:
    """Random centrally symmetric circular polygon with the given signature.

    Each bucket is halved and split into a few random parts; the parts are
    shuffled into a half chain of total turn pi, which closes with its own
    copy (a point reflection).  Deterministic per ``seed``.
    """
    if abs(sig.total - TAU) > tol.eps_ang * (len(sig.arcs) + 1):
        raise InfeasibleSignature(f"signature turns {sig.total:.12g}, not 2*pi")
    rng = np.random.default_rng(seed)
    floor_ang = 10 * tol.eps_ang * 1e3
    floor_len = 10 * tol.eps_len * 1e3
    half_corner = sig.corners / 2
    if half_corner >= math.pi - tol.eps_ang and sig.seg_total <= 0:
        raise InfeasibleSignature("polygon signature without segments")
    for _ in range(max_tries):
        pieces: list[Element] = []
        if half_corner > tol.eps_ang:
            k = int(rng.integers(1, 4))
            if half_corner > math.pi * 0.9:
                k = max(k, 2)
            pieces += [Corner(t) for t in _split(half_corner, k, rng, floor_ang)]
        for r, s in sig.arcs:
            pieces += [Arc(r, t) for t in _split(s / 2, int(rng.integers(1, 4)), rng, floor_ang)]
        if sig.seg_total > 0:
            k = int(rng.integers(1, 4))
            if half_corner > math.pi * 0.9:
                k = max(k, 2)
            pieces += [Seg(t) for t in _split(sig.seg_total / 2, k, rng, floor_len)]
        order = rng.permutation(len(pieces))
        half = [pieces[k] for k in order]
        heading = float(rng.uniform(0, TAU))
        fig = normalize(ConvexChain(Point(0.0, 0.0), heading, tuple(half + half)), tol)
        if validate(fig, tol).ok:
            return fig
    raise InfeasibleSignature("no valid arrangement found (corner parts keep merging past pi)")


def scale_segments(c: ConvexChain, factor: float, tol: Tolerance = DEFAULT_TOL) -> ConvexChain:
    """Multiply every segment length; closure survives for centrally symmetric chains."""
    els = tuple(Seg(e.length * factor) if isinstance(e, Seg) else e for e in c.elements)
    out = normalize(ConvexChain(c.start, c.heading, els), tol)
    if central_symmetry(c, tol) is None:
        raise NotCentrallySymmetric("segment scaling only preserves closure with central symmetry")
    return out


def with_area(c: ConvexChain, target: float, tol: Tolerance = DEFAULT_TOL) -> ConvexChain:
    """Rescale the segments of a centrally symmetric chain to hit ``target`` area."""
    if not any(isinstance(e, Seg) for e in c.elements):
        raise InfeasibleSignature("no segments to rescale")
    lo_area = area(scale_segments(c, 1e-6, tol), tol)
    if target <= lo_area:
        raise InfeasibleSignature(f"target area {target:.6g} below segment-free area {lo_area:.6g}")
    hi = 1.0
    while area(scale_segments(c, hi, tol), tol) < target:
        hi *= 2.0
    lam = brentq(lambda s: area(scale_segments(c, s, tol), tol) - target, 1e-6, hi, xtol=1e-15, rtol=1e-15)
    return scale_segments(c, lam, tol)


def random_polygon(n: int, seed: int, scale: float = 1.0) -> ConvexChain:
    """Convex polygon on about ``n`` random points of a wobbly ellipse."""
    rng = np.random.default_rng(seed)
    for _ in range(100):
        ang = np.sort(rng.uniform(0, TAU, n))
        ax, ay = rng.uniform(0.5, 1.5, 2)
        pts = np.column_stack([ax * np.cos(ang), ay * np.sin(ang)]) * rng.uniform(0.8, 1.0, (n, 1))
        hull = ConvexHull(pts)
        verts = pts[hull.vertices] * scale
        if len(verts) < 3:
            continue
        fig = polygon([tuple(v) for v in verts])
        if validate(fig).ok:
            return fig
    raise InfeasibleSignature("could not draw a valid polygon")


def dilate(c: ConvexChain, factor: float) -> ConvexChain:
    """Homothety about the origin; areas scale by ``factor**2``."""
    if not factor > 0:
        raise ValueError("dilation factor must be positive")
    els: list[Element] = []
    for e in c.elements:
        if isinstance(e, Seg):
            els.append(Seg(e.length * factor))
        elif isinstance(e, Arc):
            els.append(Arc(e.radius * factor, e.sweep))
        else:
            els.append(e)
    return ConvexChain(Point(c.start[0] * factor, c.start[1] * factor), c.heading, tuple(els))
