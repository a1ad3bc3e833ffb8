"""Explicit scissors-congruence certificates.

Arcs of equal radius are cut to a common refinement and chorded off; the
resulting circular segments match one-to-one between the two figures.  The
polygonal remainders have equal area and are dissected into one another by
the classical triangle -> rectangle -> common-width -> stacked-rectangle
pipeline.  Certificates are checked by area bookkeeping and quasi-random
point coverage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import count
from typing import Sequence

import numpy as np
from scipy.stats import qmc

from .figure import (
    Arc,
    ConvexChain,
    Corner,
    Seg,
    area,
    arc_center,
    areas_match,
    boundary_stably_equidecomposable,
    congruent,
    polygon,
    require_valid,
)
from .kernel import DEFAULT_TOL, GeometryError, Isometry, Tolerance, rotation, translation
from .region import ArcEdge, ConvexRegion, LineEdge

MAX_CHORD_SWEEP = math.pi / 2
DEFECT_BOUND = 2e-3


class SweepTooLarge(GeometryError):
    pass


class Degenerate(GeometryError):
    pass


class AreaMismatch(GeometryError):
    pass


class FigureMismatch(GeometryError):
    pass


class ClippingFailure(GeometryError):
    def __init__(self, msg: str, pair: tuple[str, str] | None = None):
        self.pair = pair
        super().__init__(msg if pair is None else f"{msg} (pieces {pair[0]}, {pair[1]})")


class NotEquidecomposable(GeometryError):
    def __init__(self, clause: str):
        self.clause = clause
        super().__init__(f"figures are not equidecomposable: {clause} differ")


_ids = count()


def _new_id(prefix: str = "p") -> str:
    return f"{prefix}{next(_ids)}"


def _numbered(d: Dissection) -> Dissection:
    """Stable ids ``p0, p1, ...`` so output does not depend on earlier calls."""
    pieces = tuple(Piece(f"p{k}", pc.edges) for k, pc in enumerate(d.pieces))
    return Dissection(d.source, d.target, pieces, d.placements)


@dataclass(frozen=True)
class Piece:
    id: str
    edges: tuple

    @classmethod
    def polygon(cls, pts, id: str | None = None) -> Piece:
        pts = [tuple(map(float, p)) for p in pts]
        edges = tuple(LineEdge(p, q) for p, q in zip(pts, pts[1:] + pts[:1]))
        return cls(id or _new_id(), edges)

    @cached_property
    def region(self) -> ConvexRegion:
        return ConvexRegion.from_edges(self.edges)

    @property
    def area(self) -> float:
        return abs(self.region.area)

    @property
    def is_polygon(self) -> bool:
        return all(isinstance(e, LineEdge) for e in self.edges)

    @property
    def vertices(self) -> np.ndarray:
        if not self.is_polygon:
            raise ClippingFailure(f"piece {self.id} has arc edges")
        return np.array([e.a for e in self.edges], dtype=float)


@dataclass(frozen=True)
class Placement:
    source: Isometry
    target: Isometry


@dataclass(frozen=True)
class Dissection:
    source: ConvexChain
    target: ConvexChain
    pieces: tuple[Piece, ...]
    placements: tuple[Placement, ...]

    def __len__(self) -> int:
        return len(self.pieces)

    def inverse(self) -> Dissection:
        return Dissection(self.target, self.source, self.pieces,
                          tuple(Placement(p.target, p.source) for p in self.placements))


@dataclass(frozen=True)
class VerificationReport:
    area_residuals: tuple[float, float]
    coverage_defect: float
    containment_defect: float
    max_overlap_depth: int
    piece_count: int
    samples: int
    excluded_fraction: float
    defect_bound: float = DEFECT_BOUND
    area_bound: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (
            max(abs(r) for r in self.area_residuals) <= self.area_bound
            and self.coverage_defect <= self.defect_bound
            and self.containment_defect <= self.defect_bound
        )

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "areaResiduals": list(self.area_residuals),
            "areaBound": self.area_bound,
            "coverageDefect": self.coverage_defect,
            "containmentDefect": self.containment_defect,
            "defectBound": self.defect_bound,
            "maxOverlapDepth": self.max_overlap_depth,
            "pieceCount": self.piece_count,
            "samples": self.samples,
            "excludedFraction": self.excluded_fraction,
        }


# --- convex polygon helpers ----------------------------------------------------

def _signed_area(pts) -> float:
    s = 0.0
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


def _ccw(pts) -> list[tuple[float, float]]:
    pts = [(float(p[0]), float(p[1])) for p in pts]
    return pts if _signed_area(pts) >= 0 else pts[::-1]


def clip_convex(subject, clip) -> list[tuple[float, float]]:
    """Sutherland-Hodgman intersection of two convex ccw polygons."""
    out = list(subject)
    n = len(clip)
    lens = [math.dist(clip[i], clip[(i + 1) % n]) for i in range(n)]
    # an edge this short has no trustworthy direction
    short = 1e-9 * sum(lens)
    for i in range(n):
        if not out:
            break
        if lens[i] <= short:
            continue
        ax, ay = clip[i]
        bx, by = clip[(i + 1) % n]
        ex, ey = bx - ax, by - ay
        inp, out = out, []
        m = len(inp)
        for k in range(m):
            px, py = inp[k - 1]
            qx, qy = inp[k]
            sp = ex * (py - ay) - ey * (px - ax)
            sq = ex * (qy - ay) - ey * (qx - ax)
            if sq >= 0:
                if sp < 0:
                    t = sp / (sp - sq)
                    out.append((px + t * (qx - px), py + t * (qy - py)))
                out.append((qx, qy))
            elif sp >= 0:
                t = sp / (sp - sq)
                out.append((px + t * (qx - px), py + t * (qy - py)))
    if len(out) < 3:
        return out
    x0, y0, x1, y1 = _bbox(out)
    return _dedupe(out, 1e-12 * max(x1 - x0, y1 - y0))


def _dedupe(pts, eps: float = 1e-15) -> list[tuple[float, float]]:
    res: list[tuple[float, float]] = []
    for p in pts:
        if not res or abs(p[0] - res[-1][0]) > eps or abs(p[1] - res[-1][1]) > eps:
            res.append(p)
    if len(res) > 1 and abs(res[0][0] - res[-1][0]) <= eps and abs(res[0][1] - res[-1][1]) <= eps:
        res.pop()
    return res


def _bbox(pts) -> tuple[float, float, float, float]:
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return min(xs), min(ys), max(xs), max(ys)


def _boxes_overlap(a, b) -> bool:
    return a[0] <= b[2] and b[0] <= a[2] and a[1] <= b[3] and b[1] <= a[3]


def _map(m: Isometry, pts) -> list[tuple[float, float]]:
    return _ccw([tuple(m(p)) for p in pts])


def _rect(x0, y0, x1, y1) -> list[tuple[float, float]]:
    return [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]


# --- cut-and-move engine ---------------------------------------------------

@dataclass
class _Part:
    """Polygon in source coordinates with its motion into the current frame."""

    poly: list[tuple[float, float]]
    pose: Isometry


def _apply_ops(parts: list[_Part], ops: Sequence[tuple[list, Isometry]], min_area: float) -> list[_Part]:
    out: list[_Part] = []
    for part in parts:
        cur = _map(part.pose, part.poly)
        box = _bbox(cur)
        inv = part.pose.inverse()
        for region, iso in ops:
            if not _boxes_overlap(box, _bbox(region)):
                continue
            x = clip_convex(cur, region)
            if len(x) < 3 or _signed_area(x) <= min_area:
                continue
            out.append(_Part(_map(inv, x), iso @ part.pose))
    return out


def _slide_ops(a: float, b: float, w: float) -> list[tuple[list, Isometry]]:
    """[0,a]x[0,b] -> [0,w]x[0,ab/w] in three pieces, for w <= a <= 2w."""
    h = a * b / w
    yf = b * (a - w) / w
    return [
        ([(0.0, 0.0), (w, 0.0), (w, yf), (a - w, b), (0.0, b)], Isometry()),
        ([(w, 0.0), (a, 0.0), (w, yf)], translation(-w, b)),
        ([(a, 0.0), (a, b), (a - w, b)], translation(w - a, h - b)),
    ]


def _rect_width_ops(a: float, b: float, w: float, eps: float) -> list[list[tuple[list, Isometry]]]:
    """Sequence of cut-and-move steps taking [0,a]x[0,b] to width ``w``."""
    steps = []
    while a > 2 * w:
        steps.append([(_rect(0, 0, a / 2, b), Isometry()), (_rect(a / 2, 0, a, b), translation(-a / 2, b))])
        a, b = a / 2, 2 * b
    while a < w / 2:
        steps.append([(_rect(0, 0, a, b / 2), Isometry()), (_rect(0, b / 2, a, b), translation(a, -b / 2))])
        a, b = 2 * a, b / 2
    if abs(a - w) <= eps:
        if a != w:
            steps.append([(_rect(0, 0, a, b), Isometry())])
        return steps
    if a > w:
        steps.append(_slide_ops(a, b, w))
    else:
        # run the slide backwards from the wider rectangle
        h = a * b / w
        inv = []
        for region, iso in _slide_ops(w, h, a):
            inv.append((_map(iso, region), iso.inverse()))
        steps.append(inv)
    return steps


def _frame_of_rectangle(pts) -> tuple[Isometry, float, float]:
    """Motion taking a rectangle (4 ccw points) to [0,a]x[0,b], first edge on +x."""
    p0, p1, _, p3 = pts
    a = math.dist(p0, p1)
    b = math.dist(p0, p3)
    ang = math.atan2(p1[1] - p0[1], p1[0] - p0[0])
    r = Isometry(-ang)
    q = r(p0)
    return Isometry(-ang, (-q[0], -q[1])), a, b


def _dissection_from_parts(source: ConvexChain, target: ConvexChain, parts: list[_Part]) -> Dissection:
    pieces, places = [], []
    for part in parts:
        pieces.append(Piece.polygon(part.poly))
        places.append(Placement(Isometry(), part.pose))
    return Dissection(source, target, tuple(pieces), tuple(places))


def _as_points(p) -> list[tuple[float, float]]:
    if isinstance(p, Piece):
        return _ccw([tuple(v) for v in p.vertices])
    if isinstance(p, ConvexChain):
        return _ccw(_dedupe([tuple(map(float, v)) for v in p.vertices], 1e-14))
    return _ccw(p)


def _triangle_parts(tri, eps_len: float) -> tuple[list[_Part], Isometry, float, float]:
    """Triangle -> rectangle on its longest side, returned in that rectangle's frame."""
    pts = _as_points(tri)
    if len(pts) != 3:
        raise Degenerate("triangle needs three vertices")
    sides = [math.dist(pts[i], pts[(i + 1) % 3]) for i in range(3)]
    k = int(np.argmax(sides))
    A, B, C = pts[k], pts[(k + 1) % 3], pts[(k + 2) % 3]
    base = sides[k]
    height = 2 * abs(_signed_area([A, B, C])) / base
    if height < 10 * eps_len or base < 10 * eps_len:
        raise Degenerate(f"triangle altitude {height:.3g} too small")
    M1 = ((A[0] + C[0]) / 2, (A[1] + C[1]) / 2)
    M2 = ((B[0] + C[0]) / 2, (B[1] + C[1]) / 2)
    ux, uy = (B[0] - A[0]) / base, (B[1] - A[1]) / base
    t = (C[0] - M1[0]) * ux + (C[1] - M1[1]) * uy
    F = (M1[0] + t * ux, M1[1] + t * uy)
    ops = [
        ([A, B, M2, M1], Isometry()),
        ([M1, F, C], rotation(math.pi, M1)),
        ([F, M2, C], rotation(math.pi, M2)),
    ]
    parts = []
    for region, iso in ops:
        if abs(_signed_area(region)) > (eps_len * base) ** 2:
            parts.append(_Part(_ccw(region), iso))
    nx, ny = -uy, ux
    h2 = height / 2
    rect = [A, B, (B[0] + nx * h2, B[1] + ny * h2), (A[0] + nx * h2, A[1] + ny * h2)]
    frame, a, b = _frame_of_rectangle(rect)
    return [_Part(p.poly, frame @ p.pose) for p in parts], frame, a, b


def triangle_to_rectangle(tri, tol: Tolerance = DEFAULT_TOL) -> Dissection:
    """Three-piece dissection of a triangle onto base x half-altitude.

    The target rectangle is placed axis-aligned at the origin.
    """
    parts, _, a, b = _triangle_parts(tri, tol.eps_len)
    return _numbered(_dissection_from_parts(polygon(_as_points(tri)), polygon(_rect(0, 0, a, b)), parts))


def rectangle_to_width(rect, w: float, tol: Tolerance = DEFAULT_TOL) -> Dissection:
    """Dissection of a rectangle onto the axis-aligned ``w x (area / w)`` rectangle at the origin."""
    pts = _as_points(rect)
    if len(pts) != 4:
        raise Degenerate("rectangle needs four vertices")
    if not w > 0:
        raise Degenerate("target width must be positive")
    frame, a, b = _frame_of_rectangle(pts)
    if abs(math.log(b / w)) < abs(math.log(a / w)):
        # use the other side as the width: start from the next corner
        pts = pts[1:] + pts[:1]
        frame, a, b = _frame_of_rectangle(pts)
    if min(a, b) < 10 * tol.eps_len:
        raise Degenerate("rectangle too thin")
    parts = [_Part(pts, frame)]
    min_area = (tol.eps_len * max(a, b)) ** 2
    for step in _rect_width_ops(a, b, w, tol.eps_len):
        parts = _apply_ops(parts, step, min_area)
    return _numbered(_dissection_from_parts(polygon(pts), polygon(_rect(0, 0, w, a * b / w)), parts))


def _altitude(tri) -> float:
    """Height of a triangle over its longest side."""
    longest = max(math.dist(tri[i], tri[(i + 1) % 3]) for i in range(3))
    return 2 * abs(_signed_area(tri)) / longest if longest > 0 else 0.0


def _fan(pts: list) -> list[list]:
    """Fan triangulation from the apex whose thinnest triangle is fattest."""
    n = len(pts)
    best, best_h = 0, -1.0
    for k in range(n):
        h = min(_altitude([pts[k], pts[(k + i) % n], pts[(k + i + 1) % n]]) for i in range(1, n - 1))
        if h > best_h:
            best, best_h = k, h
    return [[pts[best], pts[(best + i) % n], pts[(best + i + 1) % n]] for i in range(1, n - 1)]


def _polygon_to_strip(p, w: float, tol: Tolerance) -> tuple[list[_Part], float]:
    """Cut a convex polygon into parts stacked into [0,w]x[0,H]."""
    pts = _as_points(p)
    scale = max(math.dist(pts[0], q) for q in pts)
    min_area = (tol.eps_len * scale) ** 2
    out: list[_Part] = []
    y = 0.0
    for tri in _fan(pts):
        if _altitude(tri) < 10 * tol.eps_len:
            continue
        parts, _, a, b = _triangle_parts(tri, tol.eps_len)
        for step in _rect_width_ops(a, b, w, tol.eps_len):
            parts = _apply_ops(parts, step, min_area)
        lift = translation(0.0, y)
        out += [_Part(q.poly, lift @ q.pose) for q in parts]
        y += a * b / w
    return out, y


def identity_dissection(f: ConvexChain) -> Dissection:
    return Dissection(f, f, (Piece("p0", f.edges),), (Placement(Isometry(), Isometry()),))


def polygons_dissect(p, q, tol: Tolerance = DEFAULT_TOL) -> Dissection:
    """Bolyai-Gerwien dissection between two equal-area convex polygons."""
    P = polygon(_as_points(p))
    Q = polygon(_as_points(q))
    ap, aq = area(P, tol), area(Q, tol)
    if abs(ap - aq) > tol.eps_area * max(ap, aq):
        raise AreaMismatch(f"polygon areas {ap:.12g} and {aq:.12g} differ")
    m = congruent(P, Q, tol)
    if m is not None:
        return Dissection(P, Q, (Piece.polygon(_as_points(P), "p0"),), (Placement(Isometry(), m),))
    w = math.sqrt(0.5 * (ap + aq))
    parts_p, hp = _polygon_to_strip(P, w, tol)
    parts_q, hq = _polygon_to_strip(Q, w, tol)
    d_p = _dissection_from_parts(P, polygon(_rect(0, 0, w, hp)), parts_p)
    d_q = _dissection_from_parts(Q, polygon(_rect(0, 0, w, hq)), parts_q)
    return compose(d_p, d_q.inverse(), tol, witness=Isometry())


def compose(d1: Dissection, d2: Dissection, tol: Tolerance = DEFAULT_TOL,
                        witness: Isometry | None = None) -> Dissection:
    """Common refinement of ``d1`` followed by ``d2`` (polygonal pieces only)."""
    if witness is None:
        witness = congruent(d1.target, d2.source, tol)
        if witness is None:
            raise FigureMismatch("target of the first dissection is not congruent to the source of the second")
    first = []
    for pc, pl in zip(d1.pieces, d1.placements):
        if not pc.is_polygon:
            raise ClippingFailure("arc-edged piece cannot enter composition", (pc.id, "-"))
        mv = witness @ pl.target
        poly = _map(mv, pc.vertices)
        first.append((pc, pl, mv, poly, _bbox(poly)))
    second = []
    for pc, pl in zip(d2.pieces, d2.placements):
        if not pc.is_polygon:
            raise ClippingFailure("arc-edged piece cannot enter composition", ("-", pc.id))
        poly = _map(pl.source, pc.vertices)
        second.append((pc, pl, poly, _bbox(poly)))
    scale = max(math.sqrt(area(d1.source, tol)), 1e-300)
    min_area = (tol.eps_len * scale) ** 2
    pieces, places = [], []
    boxes = np.array([s[3] for s in second]) if second else np.zeros((0, 4))
    for pc1, pl1, mv1, poly1, b1 in first:
        hit = np.nonzero((boxes[:, 0] <= b1[2]) & (b1[0] <= boxes[:, 2]) & (boxes[:, 1] <= b1[3]) & (b1[1] <= boxes[:, 3]))[0]
        to_src = pl1.source @ mv1.inverse()
        for k in hit:
            pc2, pl2, poly2, _ = second[k]
            x = clip_convex(poly1, poly2)
            if len(x) < 3:
                continue
            a = _signed_area(x)
            if a <= min_area:
                continue
            pieces.append(Piece.polygon(x))
            places.append(Placement(to_src, pl2.target @ pl2.source.inverse()))
    return _numbered(Dissection(d1.source, d2.target, tuple(pieces), tuple(places)))


# --- arcs ------------------------------------------------------------------

def chord_arcs(f: ConvexChain, refinement: dict[int, Sequence[float]] | None = None,
               tol: Tolerance = DEFAULT_TOL) -> tuple[Piece, list[Piece]]:
    """Chord off every (refined) arc: convex remainder polygon plus circular segments.

    ``refinement`` maps an element index to the sweeps its arc is cut into;
    arcs without an entry are cut into equal parts of at most a quarter turn.
    """
    require_valid(f, tol)
    refinement = refinement or {}
    verts: list[tuple[float, float]] = []
    lumps: list[Piece] = []
    for k, ((p, h), e) in enumerate(zip(f.poses, f.elements)):
        if isinstance(e, Corner):
            continue
        if isinstance(e, Seg):
            verts.append(tuple(p))
            continue
        parts = list(refinement.get(k, []))
        if not parts:
            n = max(1, math.ceil(e.sweep / MAX_CHORD_SWEEP - 1e-12))
            parts = [e.sweep / n] * n
        if abs(math.fsum(parts) - e.sweep) > tol.eps_ang * len(parts):
            raise SweepTooLarge(f"refinement of element {k} does not sum to its sweep")
        if max(parts) > MAX_CHORD_SWEEP + tol.eps_ang:
            raise SweepTooLarge(f"arc piece of sweep {max(parts):.6g} exceeds a quarter turn")
        c = arc_center(p, h, e.radius)
        hh = h
        cur = tuple(p)
        for s in parts:
            hh += s
            nxt = (c[0] + e.radius * math.sin(hh), c[1] - e.radius * math.cos(hh))
            verts.append(cur)
            lumps.append(Piece(_new_id("lump"), (ArcEdge(tuple(c), e.radius, cur, nxt), LineEdge(nxt, cur))))
            cur = nxt
    core = _dedupe(verts, 1e-14)
    return Piece.polygon(core, _new_id("core")), lumps


def _common_refinement(fa: list[float], ga: list[float], eps: float) -> list[tuple[int, int, float]]:
    """Overlay two partitions of the same total: (f index, g index, length) runs."""
    cf = np.concatenate([[0.0], np.cumsum(fa)])
    cg = np.concatenate([[0.0], np.cumsum(ga)])
    total = max(cf[-1], cg[-1])
    cuts = sorted(set(cf.tolist()) | set(cg.tolist()))
    merged = [0.0]
    for c in cuts[1:]:
        if c - merged[-1] > eps:
            merged.append(c)
    merged[-1] = total
    out = []
    for lo, hi in zip(merged, merged[1:]):
        mid = 0.5 * (lo + hi)
        i = min(int(np.searchsorted(cf, mid) - 1), len(fa) - 1)
        j = min(int(np.searchsorted(cg, mid) - 1), len(ga) - 1)
        out.append((i, j, hi - lo))
    return out


def _arc_buckets(f: ConvexChain, g: ConvexChain, eps: float):
    """Arc elements of both figures grouped by radius (joint single-linkage)."""
    items = [(e.radius, 0, k) for k, e in enumerate(f.elements) if isinstance(e, Arc)]
    items += [(e.radius, 1, k) for k, e in enumerate(g.elements) if isinstance(e, Arc)]
    items.sort()
    groups: list[list] = []
    for it in items:
        if groups and it[0] - groups[-1][-1][0] <= eps:
            groups[-1].append(it)
        else:
            groups.append([it])
    return [([k for _, s, k in grp if s == 0], [k for _, s, k in grp if s == 1]) for grp in groups]


def dissect(f: ConvexChain, g: ConvexChain, tol: Tolerance = DEFAULT_TOL) -> Dissection:
    """Certificate that ``f`` can be cut into pieces reassembling ``g``."""
    require_valid(f, tol)
    require_valid(g, tol)
    if not areas_match(f, g, tol):
        raise NotEquidecomposable("areas")
    if not boundary_stably_equidecomposable(f, g, tol):
        raise NotEquidecomposable("arc signatures")
    m = congruent(f, g, tol)
    if m is not None:
        return Dissection(f, g, (Piece("p0", f.edges),), (Placement(Isometry(), m),))
    ref_f: dict[int, list[float]] = {}
    ref_g: dict[int, list[float]] = {}
    pairs: list[tuple[int, int, int, int]] = []  # (f elem, f part, g elem, g part)
    for fk, gk in _arc_buckets(f, g, tol.eps_len):
        fa = [f.elements[k].sweep for k in fk]
        ga = [g.elements[k].sweep for k in gk]
        for i, j, ln in _common_refinement(fa, ga, 10 * tol.eps_ang):
            n = max(1, math.ceil(ln / MAX_CHORD_SWEEP - 1e-12))
            for _ in range(n):
                ref_f.setdefault(fk[i], []).append(ln / n)
                ref_g.setdefault(gk[j], []).append(ln / n)
                pairs.append((fk[i], len(ref_f[fk[i]]) - 1, gk[j], len(ref_g[gk[j]]) - 1))
    # pieces of an element must sum exactly to its sweep
    for ref, fig in ((ref_f, f), (ref_g, g)):
        for k, parts in ref.items():
            parts[-1] += fig.elements[k].sweep - math.fsum(parts)
    core_f, lumps_f = chord_arcs(f, ref_f, tol)
    core_g, lumps_g = chord_arcs(g, ref_g, tol)
    index_f = _lump_index(f, ref_f)
    index_g = _lump_index(g, ref_g)
    pieces: list[Piece] = []
    places: list[Placement] = []
    for ef, pf, eg, pg in pairs:
        lf = lumps_f[index_f[(ef, pf)]]
        lg = lumps_g[index_g[(eg, pg)]]
        a_f, b_f = lf.edges[0].a, lf.edges[0].b
        a_g, b_g = lg.edges[0].a, lg.edges[0].b
        mv = Isometry.from_poses(
            (a_f, math.atan2(b_f[1] - a_f[1], b_f[0] - a_f[0])),
            (a_g, math.atan2(b_g[1] - a_g[1], b_g[0] - a_g[0])),
        )
        pieces.append(lf)
        places.append(Placement(Isometry(), mv))
    scale = max(area(f, tol), area(g, tol))
    if max(core_f.area, core_g.area) > tol.eps_area * scale:
        core = polygons_dissect(core_f, core_g, tol)
        pieces += core.pieces
        places += core.placements
    return _numbered(Dissection(f, g, tuple(pieces), tuple(places)))


def _lump_index(f: ConvexChain, ref: dict[int, list[float]]) -> dict[tuple[int, int], int]:
    """Map (element, part) to the position of that lump in chord_arcs output."""
    out = {}
    pos = 0
    for k, e in enumerate(f.elements):
        if not isinstance(e, Arc):
            continue
        parts = ref.get(k)
        if not parts:
            n = max(1, math.ceil(e.sweep / MAX_CHORD_SWEEP - 1e-12))
            pos += n
            continue
        for j in range(len(parts)):
            out[(k, j)] = pos
            pos += 1
    return out


# --- verification ------------------------------------------------------------

def _placed_box(piece: Piece, m: Isometry) -> tuple[float, float, float, float]:
    """Axis-aligned box around the placed piece (arcs padded for sampling)."""
    hull, pad = piece.region.hull_points
    pts = m.apply_array(hull)
    lo, hi = pts.min(axis=0) - pad, pts.max(axis=0) + pad
    return lo[0], lo[1], hi[0], hi[1]


@lru_cache(maxsize=16)
def _halton_cached(n: int, seed: int) -> np.ndarray:
    pts = qmc.Halton(d=2, scramble=True, seed=seed).random(n)
    pts.setflags(write=False)
    return pts


def _halton(n: int, seed: int) -> np.ndarray:
    """Scrambled Halton points in the unit square (cached, read-only)."""
    return _halton_cached(int(n), int(seed))


def _polygon_depths(pieces, poses, pts, sels) -> np.ndarray:
    """Depths of the selected points in many polygonal pieces at once."""
    counts = np.array([len(q) for q in sels])
    planes = [pc.region._planes for pc in pieces]
    k = max(len(p[0]) for p in planes)
    nx = np.zeros((len(pieces), k))
    ny = np.zeros((len(pieces), k))
    off = np.full((len(pieces), k), -np.inf)  # padding planes never bind
    for i, (a, b, c) in enumerate(planes):
        nx[i, : len(a)], ny[i, : len(a)], off[i, : len(a)] = a, b, c
    inv = [m.inverse() for m in poses]
    rep = lambda v: np.repeat(np.asarray(v, dtype=float), counts)
    p = pts[np.concatenate(sels)]
    x = p[:, 0]
    y = p[:, 1] * rep([-1.0 if q.reflect else 1.0 for q in inv])
    c = rep([math.cos(q.rotation) for q in inv])
    s = rep([math.sin(q.rotation) for q in inv])
    lx = c * x - s * y + rep([q.translation[0] for q in inv])
    ly = s * x + c * y + rep([q.translation[1] for q in inv])
    out = np.full(len(p), np.inf)
    for j in range(k):
        np.minimum(out, rep(nx[:, j]) * lx + rep(ny[:, j]) * ly - rep(off[:, j]), out=out)
    return out


def _coverage(fig: ConvexChain, pieces, poses, n: int, seed: int, band: float, batch: int = 300_000):
    """Count how many placed pieces contain each quasi-random point of ``fig``."""
    region = fig.region
    x0, y0, x1, y1 = region.bbox
    pts = _halton(n, seed) * [x1 - x0, y1 - y0] + [x0, y0]
    pts = pts[region.contains(pts, margin=-band)]
    pts = pts[np.argsort(pts[:, 0], kind="stable")]
    xs = pts[:, 0]
    lo_cnt = np.zeros(len(pts), dtype=np.int64)
    hi_cnt = np.zeros(len(pts), dtype=np.int64)

    def tally(sel: np.ndarray, dep: np.ndarray) -> None:
        hi_cnt[:] += np.bincount(sel[dep >= -band], minlength=len(pts))
        lo_cnt[:] += np.bincount(sel[dep >= band], minlength=len(pts))

    queue: list[tuple[Piece, Isometry, np.ndarray]] = []
    queued = 0

    def flush() -> None:
        # group by edge count so no padding planes are evaluated
        groups: dict[int, list] = {}
        for q in queue:
            groups.setdefault(len(q[0].region._planes[0]), []).append(q)
        for grp in groups.values():
            sels = [q[2] for q in grp]
            tally(np.concatenate(sels), _polygon_depths([q[0] for q in grp], [q[1] for q in grp], pts, sels))
        queue.clear()

    for pc, m in zip(pieces, poses):
        bx0, by0, bx1, by1 = _placed_box(pc, m)
        i0, i1 = np.searchsorted(xs, [bx0 - band, bx1 + band])
        if i1 <= i0:
            continue
        ys = pts[i0:i1, 1]
        sel = i0 + np.nonzero((ys >= by0 - band) & (ys <= by1 + band))[0]
        if not len(sel):
            continue
        if len(pc.region.lumps) or pc.region._planes is None:
            tally(sel, pc.region.depth(m.inverse().apply_array(pts[sel]), cap=band))
            continue
        queue.append((pc, m, sel))
        queued += len(sel)
        if queued >= batch:
            flush()
            queued = 0
    flush()
    clear = lo_cnt == hi_cnt
    defects = int(np.count_nonzero(clear & (hi_cnt != 1)))
    depth = int(hi_cnt[clear].max()) if clear.any() else 0
    return defects, int(np.count_nonzero(clear)), len(pts), depth


def _piece_samples(pieces, n_total: int, seed: int, band: float) -> list[np.ndarray]:
    """Quasi-random points well inside each piece, in the piece's own frame."""
    per = max(16, n_total // max(len(pieces), 1))
    unit = _halton(per, seed)
    out = []
    for pc in pieces:
        x0, y0, x1, y1 = pc.region.bbox
        pts = unit * [x1 - x0, y1 - y0] + [x0, y0]
        out.append(pts[pc.region.depth(pts, cap=band) >= band])
    return out


def _containment(fig: ConvexChain, samples: list[np.ndarray], poses, band: float) -> tuple[int, int]:
    """Sampled points of the placed pieces that fall outside ``fig``."""
    placed = [m.apply_array(p) for p, m in zip(samples, poses) if len(p)]
    if not placed:
        return 0, 0
    pts = np.vstack(placed)
    return int(np.count_nonzero(~fig.region.contains(pts, margin=band))), len(pts)


def verify(d: Dissection, samples: int = 100_000, seed: int = 0, tol: Tolerance = DEFAULT_TOL) -> VerificationReport:
    sa = area(d.source, tol)
    ta = area(d.target, tol)
    pa = math.fsum(p.area for p in d.pieces)
    scale = max(sa, ta)
    band = 10 * tol.eps_len * max(1.0, math.sqrt(scale))
    src_poses = [p.source for p in d.placements]
    tgt_poses = [p.target for p in d.placements]
    if d.pieces:
        ds, cs, ns, depth_s = _coverage(d.source, d.pieces, src_poses, samples, seed, band)
        dt, ct, nt, depth_t = _coverage(d.target, d.pieces, tgt_poses, samples, seed + 1, band)
        inner = _piece_samples(d.pieces, samples // 2, seed + 2, band)
        bs, ms = _containment(d.source, inner, src_poses, band)
        bt, mt = _containment(d.target, inner, tgt_poses, band)
    else:
        ds = cs = ns = dt = ct = nt = bs = ms = bt = mt = 0
        depth_s = depth_t = 0
    cov = max(ds / max(cs, 1), dt / max(ct, 1))
    if not d.pieces:
        cov = 1.0
    cont = (bs + bt) / max(ms + mt, 1)
    excluded = 1.0 - (cs + ct) / max(ns + nt, 1)
    return VerificationReport(
        area_residuals=(pa - sa, pa - ta),
        coverage_defect=cov,
        containment_defect=cont,
        max_overlap_depth=max(depth_s, depth_t),
        piece_count=len(d.pieces),
        samples=samples,
        excluded_fraction=excluded,
        area_bound=tol.eps_area * scale,
        details={"source": {"defects": ds, "counted": cs}, "target": {"defects": dt, "counted": ct},
                 "containment": {"outside": bs + bt, "checked": ms + mt}},
    )
