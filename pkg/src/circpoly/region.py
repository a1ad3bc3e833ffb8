"""Absolute-geometry edges and convex regions bounded by lines and ccw arcs.

A convex region bounded by segments and counterclockwise arcs is the union of
the convex polygon through its edge endpoints (arcs subdivided to quarter
turns) and one circular segment ("lump") per arc piece.  Point containment
and area both use this decomposition, vectorized over numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Union

import numpy as np

MAX_LUMP_SWEEP = math.pi / 2


@dataclass(frozen=True)
class LineEdge:
    a: tuple[float, float]
    b: tuple[float, float]


@dataclass(frozen=True)
class ArcEdge:
    """Arc of the circle (center, r) from a to b, counterclockwise if ``ccw``."""

    center: tuple[float, float]
    r: float
    a: tuple[float, float]
    b: tuple[float, float]
    ccw: bool = True

    @property
    def sweep(self) -> float:
        t0 = math.atan2(self.a[1] - self.center[1], self.a[0] - self.center[0])
        t1 = math.atan2(self.b[1] - self.center[1], self.b[0] - self.center[0])
        s = (t1 - t0) if self.ccw else (t0 - t1)
        s = math.fmod(s, 2 * math.pi)
        if s <= 1e-15:
            s += 2 * math.pi
        return s

    def points(self, n: int) -> np.ndarray:
        """``n + 1`` points along the arc, endpoints included."""
        t0 = math.atan2(self.a[1] - self.center[1], self.a[0] - self.center[0])
        sgn = 1.0 if self.ccw else -1.0
        t = t0 + sgn * np.linspace(0.0, self.sweep, n + 1)
        pts = np.column_stack(
            [self.center[0] + self.r * np.cos(t), self.center[1] + self.r * np.sin(t)]
        )
        pts[0] = self.a
        pts[-1] = self.b
        return pts


Edge = Union[LineEdge, ArcEdge]


def _ccw_arcs(edges: Sequence[Edge]) -> list[Edge]:
    """Reorient so that every arc is traversed counterclockwise (reflected input)."""
    if all(not isinstance(e, ArcEdge) or e.ccw for e in edges):
        return list(edges)
    out: list[Edge] = []
    for e in reversed(edges):
        if isinstance(e, LineEdge):
            out.append(LineEdge(e.b, e.a))
        else:
            out.append(ArcEdge(e.center, e.r, e.b, e.a, not e.ccw))
    return out


class ConvexRegion:
    """Convex polygon core plus circular-segment lumps."""

    def __init__(self, vertices: np.ndarray, lumps: np.ndarray):
        self.vertices = np.asarray(vertices, dtype=float).reshape(-1, 2)
        # lumps: rows (ax, ay, bx, by, cx, cy, r)
        self.lumps = np.asarray(lumps, dtype=float).reshape(-1, 7)

    @classmethod
    def from_edges(cls, edges: Sequence[Edge]) -> ConvexRegion:
        verts: list[tuple[float, float]] = []
        lumps: list[tuple[float, ...]] = []
        for e in _ccw_arcs(edges):
            if isinstance(e, LineEdge):
                verts.append(tuple(e.a))
                continue
            n = max(1, math.ceil(e.sweep / MAX_LUMP_SWEEP - 1e-12))
            pts = e.points(n)
            for p, q in zip(pts[:-1], pts[1:]):
                verts.append((p[0], p[1]))
                lumps.append((p[0], p[1], q[0], q[1], e.center[0], e.center[1], e.r))
        return cls(np.array(verts), np.array(lumps))

    @classmethod
    def polygon(cls, vertices) -> ConvexRegion:
        return cls(np.asarray(vertices, dtype=float), np.zeros((0, 7)))

    @property
    def core_area(self) -> float:
        v = self.vertices
        if len(v) < 3:
            return 0.0
        x, y = v[:, 0], v[:, 1]
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

    @property
    def lump_areas(self) -> np.ndarray:
        if not len(self.lumps):
            return np.zeros(0)
        L = self.lumps
        chord = np.hypot(L[:, 2] - L[:, 0], L[:, 3] - L[:, 1])
        r = L[:, 6]
        s = 2.0 * np.arcsin(np.clip(chord / (2.0 * r), 0.0, 1.0))
        return 0.5 * r * r * (s - np.sin(s))

    @property
    def area(self) -> float:
        return self.core_area + float(self.lump_areas.sum())

    @property
    def bbox(self) -> tuple[float, float, float, float]:
        lo, hi = self._extent()
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])

    def _extent(self) -> tuple[np.ndarray, np.ndarray]:
        chunks = [self.vertices]
        for ax, ay, bx, by, cx, cy, r in self.lumps:
            t0 = math.atan2(ay - cy, ax - cx)
            t1 = math.atan2(by - cy, bx - cx)
            s = (t1 - t0) % (2 * math.pi)
            t = t0 + np.linspace(0.0, s, 9)
            chunks.append(np.column_stack([cx + r * np.cos(t), cy + r * np.sin(t)]))
            # axis-aligned extremes inside the sweep
            for k in range(4):
                ang = k * math.pi / 2
                if (ang - t0) % (2 * math.pi) <= s:
                    chunks.append(np.array([[cx + r * math.cos(ang), cy + r * math.sin(ang)]]))
        allp = np.vstack(chunks)
        return allp.min(axis=0), allp.max(axis=0)

    def depth(self, pts: np.ndarray, cap: float = np.inf) -> np.ndarray:
        """Signed inset of each point: positive inside, about minus the distance outside.

        ``depth >= -margin`` is membership in the region inflated by ``margin``.
        Values at or above ``cap`` may be underestimated (never below ``cap``),
        which skips the arc tests for points already deep in the core.
        """
        pts = np.asarray(pts, dtype=float).reshape(-1, 2)
        x, y = pts[:, 0], pts[:, 1]
        out = np.full(len(pts), -np.inf)
        planes = self._planes
        if planes is not None:
            # one pass per edge: row-wise reductions over short axes are slow
            out = np.full(len(pts), np.inf)
            for a, b, c in zip(*planes):
                np.minimum(out, a * x + b * y - c, out=out)
        if len(self.lumps):
            need = np.nonzero(out < cap)[0]
            if len(need):
                xs, ys = x[need], y[need]
                best = out[need]
                for ax, ay, bx, by, cx, cy, r in self.lumps:
                    ex, ey = bx - ax, by - ay
                    ln = math.hypot(ex, ey)
                    side = (ey * (xs - ax) - ex * (ys - ay)) / ln
                    disk = r - np.hypot(xs - cx, ys - cy)
                    np.maximum(best, np.minimum(side, disk), out=best)
                out[need] = best
        return out

    def contains(self, pts: np.ndarray, margin: float = 0.0) -> np.ndarray:
        """Membership test; ``margin > 0`` inflates the region, ``< 0`` shrinks it."""
        return self.depth(pts, cap=-margin) >= -margin

    @cached_property
    def hull_points(self) -> tuple[np.ndarray, float]:
        """Points whose hull, grown by the returned pad, covers the region."""
        chunks = [self.vertices]
        pad = 0.0
        for ax, ay, bx, by, cx, cy, r in self.lumps:
            t0 = math.atan2(ay - cy, ax - cx)
            s = (math.atan2(by - cy, bx - cx) - t0) % (2 * math.pi)
            t = t0 + np.linspace(0.0, s, 9)
            chunks.append(np.column_stack([cx + r * np.cos(t), cy + r * np.sin(t)]))
            # sagitta of one sampling step
            pad = max(pad, r * (1 - math.cos(s / 16)))
        return np.vstack(chunks), pad

    @cached_property
    def _planes(self) -> tuple[np.ndarray, np.ndarray, np.ndarray] | None:
        """Inward unit normals and offsets of the core polygon's edges."""
        v = self.vertices
        if len(v) < 3:
            return None
        e = np.roll(v, -1, axis=0) - v
        lens = np.hypot(e[:, 0], e[:, 1])
        # edges this short carry no reliable direction
        keep = lens > 1e-9 * float(lens.sum())
        v, e, lens = v[keep], e[keep], lens[keep]
        nx, ny = -e[:, 1] / lens, e[:, 0] / lens
        return nx, ny, nx * v[:, 0] + ny * v[:, 1]

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Uniform rejection sample of about ``n`` interior points."""
        x0, y0, x1, y1 = self.bbox
        box = max((x1 - x0) * (y1 - y0), 1e-300)
        frac = max(self.area / box, 1e-3)
        m = int(n / frac * 1.2) + 16
        pts = rng.uniform((x0, y0), (x1, y1), size=(m, 2))
        return pts[self.contains(pts)][:n]
