"""SVG 1.1 rendering of figures and dissections.

Arcs become elliptical-arc path commands with equal radii.  The y axis is
flipped so that counterclockwise geometry reads counterclockwise on screen;
output is deterministic for a given input.
"""

from __future__ import annotations

import math

from .dissect import Dissection
from .figure import Arc, ConvexChain, Corner, Seg, arc_center
from .kernel import Isometry
from .region import ArcEdge, LineEdge

PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
)


def _f(v: float) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _pt(p) -> str:
    return f"{_f(p[0])} {_f(-p[1])}"


def _arc_cmds(center, r: float, a, sweep: float, ccw: bool) -> list[str]:
    """Arc from ``a`` turning ``sweep`` about ``center``; split below a half turn."""
    n = 1 if sweep < math.pi - 1e-9 else 2
    t0 = math.atan2(a[1] - center[1], a[0] - center[0])
    sgn = 1.0 if ccw else -1.0
    cmds = []
    for k in range(1, n + 1):
        t = t0 + sgn * sweep * k / n
        q = (center[0] + r * math.cos(t), center[1] + r * math.sin(t))
        # after the y flip a counterclockwise arc has negative SVG sweep
        cmds.append(f"A {_f(r)} {_f(r)} 0 0 {0 if ccw else 1} {_pt(q)}")
    return cmds


def chain_path(c: ConvexChain) -> tuple[str, list]:
    """Path data for a chain plus the positions of its corner nodes."""
    cmds = [f"M {_pt(c.start)}"]
    corners = []
    for (p, h), e in zip(c.poses, c.elements):
        if isinstance(e, Seg):
            cmds.append(f"L {_pt((p[0] + e.length * math.cos(h), p[1] + e.length * math.sin(h)))}")
        elif isinstance(e, Arc):
            cmds += _arc_cmds(arc_center(p, h, e.radius), e.radius, p, e.sweep, True)
        elif isinstance(e, Corner):
            corners.append(p)
    cmds.append("Z")
    return " ".join(cmds), corners


def _edge_path(edges, m: Isometry) -> str:
    cmds = []
    for i, e in enumerate(edges):
        a = m(e.a)
        if i == 0:
            cmds.append(f"M {_pt(a)}")
        if isinstance(e, LineEdge):
            cmds.append(f"L {_pt(m(e.b))}")
        elif isinstance(e, ArcEdge):
            ccw = e.ccw != m.reflect
            cmds += _arc_cmds(m(e.center), e.r, a, e.sweep, ccw)
    cmds.append("Z")
    return " ".join(cmds)


def _bbox(c: ConvexChain) -> tuple[float, float, float, float]:
    x0, y0, x1, y1 = c.region.bbox
    return x0, y0, x1, y1


def _document(width: float, height: float, view: tuple[float, float, float, float], body: list[str]) -> str:
    vx, vy, vw, vh = view
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_f(width)}" height="{_f(height)}" '
        f'viewBox="{_f(vx)} {_f(vy)} {_f(vw)} {_f(vh)}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def render_figure(c: ConvexChain, size: float = 400.0, fill: str = "#dde6f0") -> str:
    x0, y0, x1, y1 = _bbox(c)
    span = max(x1 - x0, y1 - y0, 1e-12)
    pad = 0.05 * span
    stroke = span / 200
    d, corners = chain_path(c)
    body = [f'<path d="{d}" fill="{fill}" stroke="#222" stroke-width="{_f(stroke)}"/>']
    for p in corners:
        body.append(f'<circle class="corner" cx="{_f(p[0])}" cy="{_f(-p[1])}" r="{_f(3 * stroke)}" fill="#c00"/>')
    w, h = x1 - x0 + 2 * pad, y1 - y0 + 2 * pad
    scale = size / max(w, h)
    return _document(w * scale, h * scale, (x0 - pad, -y1 - pad, w, h), body)


def render_dissection(d: Dissection, size: float = 400.0) -> str:
    """Source and target side by side; piece ``k`` has the same colour in both."""
    sx0, sy0, sx1, sy1 = _bbox(d.source)
    tx0, ty0, tx1, ty1 = _bbox(d.target)
    span = max(sx1 - sx0, sy1 - sy0, tx1 - tx0, ty1 - ty0, 1e-12)
    gap = 0.15 * span
    stroke = span / 300
    # shift the target panel to the right of the source panel
    shift = Isometry(0.0, (sx1 - tx0 + gap, 0.0))
    body = []
    for label, fig, key, move in (("source", d.source, "source", Isometry()), ("target", d.target, "target", shift)):
        path, _ = chain_path(fig.moved(move))
        body.append(f'<g class="{label}">')
        body.append(f'<path d="{path}" fill="none" stroke="#222" stroke-width="{_f(2 * stroke)}"/>')
        for k, (pc, pl) in enumerate(zip(d.pieces, d.placements)):
            m = move @ getattr(pl, key)
            body.append(
                f'<path class="piece" data-id="{pc.id}" d="{_edge_path(pc.edges, m)}" '
                f'fill="{PALETTE[k % len(PALETTE)]}" fill-opacity="0.8" stroke="#333" '
                f'stroke-width="{_f(stroke)}"/>'
            )
        body.append("</g>")
    x0 = sx0
    x1 = tx1 + shift.translation[0]
    y0 = min(sy0, ty0)
    y1 = max(sy1, ty1)
    pad = 0.05 * span
    w, h = x1 - x0 + 2 * pad, y1 - y0 + 2 * pad
    scale = 2 * size / max(w, 2 * h)
    return _document(w * scale, h * scale, (x0 - pad, -y1 - pad, w, h), body)


def render(obj, size: float = 400.0) -> str:
    if isinstance(obj, Dissection):
        return render_dissection(obj, size)
    if isinstance(obj, ConvexChain):
        return render_figure(obj, size)
    raise TypeError(f"cannot render {type(obj).__name__}")


def piece_colors(svg: str) -> dict[str, list[str]]:
    """Fill colour of every piece path, grouped by piece id (for checks)."""
    out: dict[str, list[str]] = {}
    for chunk in svg.split('<path class="piece" ')[1:]:
        pid = chunk.split('data-id="', 1)[1].split('"', 1)[0]
        fill = chunk.split('fill="', 1)[1].split('"', 1)[0]
        out.setdefault(pid, []).append(fill)
    return out


__all__ = ["render", "render_figure", "render_dissection", "chain_path", "piece_colors", "PALETTE"]
