"""Text formats: ``cpfig/1`` for figures and ``cpdis/1`` for dissections.

Both are JSON documents.  Floats are written with Python's shortest
round-trip representation, so reading a file and writing it again
reproduces it byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .dissect import Dissection, Piece, Placement
from .figure import Arc, ConvexChain, Corner, Seg, close_residual, require_valid
from .kernel import DEFAULT_TOL, GeometryError, Isometry, Point, Tolerance
from .region import ArcEdge, LineEdge

FIGURE_FORMAT = "cpfig/1"
DISSECTION_FORMAT = "cpdis/1"


class FormatError(GeometryError):
    """Malformed or unrecognised file content."""


def _num(v: Any, what: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise FormatError(f"{what}: expected a number, got {v!r}")
    return float(v)


def _pair(v: Any, what: str) -> tuple[float, float]:
    if not isinstance(v, list) or len(v) != 2:
        raise FormatError(f"{what}: expected [x, y]")
    return _num(v[0], what), _num(v[1], what)


def _field(d: dict, key: str, what: str) -> Any:
    if not isinstance(d, dict) or key not in d:
        raise FormatError(f"{what}: missing field {key!r}")
    return d[key]


# --- figures -------------------------------------------------------------------

def figure_to_dict(c: ConvexChain, oval: bool = False) -> dict:
    els = []
    for e in c.elements:
        if isinstance(e, Seg):
            els.append({"k": "seg", "len": e.length})
        elif isinstance(e, Arc):
            els.append({"k": "arc", "r": e.radius, "sweep": e.sweep})
        else:
            els.append({"k": "corner", "turn": e.turn})
    out = {"format": FIGURE_FORMAT, "start": [c.start[0], c.start[1]], "heading": c.heading, "elements": els}
    if oval:
        out["oval"] = True
    return out


def figure_from_dict(d: dict, tol: Tolerance = DEFAULT_TOL, check: bool = True) -> ConvexChain:
    """Parse, absorb a round-off closure gap, and validate.  ``"oval"`` is ignored."""
    if _field(d, "format", "figure") != FIGURE_FORMAT:
        raise FormatError(f"figure: unsupported format {d.get('format')!r}")
    start = _pair(_field(d, "start", "figure"), "start")
    heading = _num(_field(d, "heading", "figure"), "heading")
    raw = _field(d, "elements", "figure")
    if not isinstance(raw, list):
        raise FormatError("elements: expected a list")
    els = []
    for i, e in enumerate(raw):
        kind = _field(e, "k", f"element {i}")
        if kind == "seg":
            els.append(Seg(_num(_field(e, "len", f"element {i}"), f"element {i}")))
        elif kind == "arc":
            els.append(Arc(_num(_field(e, "r", f"element {i}"), f"element {i}"),
                           _num(_field(e, "sweep", f"element {i}"), f"element {i}")))
        elif kind == "corner":
            els.append(Corner(_num(_field(e, "turn", f"element {i}"), f"element {i}")))
        else:
            raise FormatError(f"element {i}: unknown kind {kind!r}")
    try:
        c = ConvexChain(Point(*start), heading, tuple(els))
    except ValueError as exc:
        raise FormatError(f"figure: {exc}") from exc
    if not check:
        return c
    c = close_residual(c, tol)
    require_valid(c, tol)
    return c


def _layout(d: dict, list_key: str, indent: str = "") -> str:
    """One key per line; the entries of ``list_key`` one per line."""
    lines = []
    for k, v in d.items():
        if k == list_key and v:
            rows = ",\n".join(f"{indent}    {json.dumps(x)}" for x in v)
            lines.append(f"{indent}  {json.dumps(k)}: [\n{rows}\n{indent}  ]")
        else:
            lines.append(f"{indent}  {json.dumps(k)}: {json.dumps(v)}")
    return "{\n" + ",\n".join(lines) + f"\n{indent}}}"


def dumps_figure(c: ConvexChain, oval: bool = False, tol: Tolerance = DEFAULT_TOL) -> str:
    """Canonical text; a round-off closure gap is absorbed first, as on load."""
    return _layout(figure_to_dict(close_residual(c, tol), oval), "elements") + "\n"


def loads_figure(text: str, tol: Tolerance = DEFAULT_TOL, check: bool = True) -> ConvexChain:
    return figure_from_dict(_parse(text), tol, check)


def read_figure(path, tol: Tolerance = DEFAULT_TOL, check: bool = True) -> ConvexChain:
    return loads_figure(_read(path), tol, check)


def write_figure(path, c: ConvexChain, oval: bool = False) -> None:
    Path(path).write_text(dumps_figure(c, oval))


# --- dissections -------------------------------------------------------------

def _edge_to_dict(e) -> dict:
    if isinstance(e, LineEdge):
        return {"k": "line", "a": list(e.a), "b": list(e.b)}
    return {"k": "arc", "c": list(e.center), "r": e.r, "a": list(e.a), "b": list(e.b), "ccw": e.ccw}


def _edge_from_dict(d: dict, what: str):
    kind = _field(d, "k", what)
    if kind == "line":
        return LineEdge(_pair(_field(d, "a", what), what), _pair(_field(d, "b", what), what))
    if kind == "arc":
        ccw = _field(d, "ccw", what)
        if not isinstance(ccw, bool):
            raise FormatError(f"{what}: ccw must be true or false")
        return ArcEdge(_pair(_field(d, "c", what), what), _num(_field(d, "r", what), what),
                       _pair(_field(d, "a", what), what), _pair(_field(d, "b", what), what), ccw)
    raise FormatError(f"{what}: unknown edge kind {kind!r}")


def _pose_to_dict(m: Isometry) -> dict:
    return {"rot": m.rotation, "tx": m.translation[0], "ty": m.translation[1], "flip": m.reflect}


def _pose_from_dict(d: dict, what: str) -> Isometry:
    flip = _field(d, "flip", what)
    if not isinstance(flip, bool):
        raise FormatError(f"{what}: flip must be true or false")
    return Isometry(_num(_field(d, "rot", what), what),
                    (_num(_field(d, "tx", what), what), _num(_field(d, "ty", what), what)), flip)


def dissection_to_dict(d: Dissection) -> dict:
    pieces = []
    for pc, pl in zip(d.pieces, d.placements):
        pieces.append({
            "id": pc.id,
            "edges": [_edge_to_dict(e) for e in pc.edges],
            "source": _pose_to_dict(pl.source),
            "target": _pose_to_dict(pl.target),
        })
    return {
        "format": DISSECTION_FORMAT,
        "source": figure_to_dict(d.source),
        "target": figure_to_dict(d.target),
        "pieces": pieces,
    }


def dissection_from_dict(d: dict, tol: Tolerance = DEFAULT_TOL) -> Dissection:
    if _field(d, "format", "dissection") != DISSECTION_FORMAT:
        raise FormatError(f"dissection: unsupported format {d.get('format')!r}")
    src = figure_from_dict(_field(d, "source", "dissection"), tol)
    tgt = figure_from_dict(_field(d, "target", "dissection"), tol)
    raw = _field(d, "pieces", "dissection")
    if not isinstance(raw, list):
        raise FormatError("pieces: expected a list")
    pieces, places = [], []
    for i, p in enumerate(raw):
        what = f"piece {i}"
        edges = _field(p, "edges", what)
        if not isinstance(edges, list) or not edges:
            raise FormatError(f"{what}: edges must be a non-empty list")
        pieces.append(Piece(str(_field(p, "id", what)), tuple(_edge_from_dict(e, what) for e in edges)))
        places.append(Placement(_pose_from_dict(_field(p, "source", what), what),
                                _pose_from_dict(_field(p, "target", what), what)))
    return Dissection(src, tgt, tuple(pieces), tuple(places))


def dumps_dissection(d: Dissection, tol: Tolerance = DEFAULT_TOL) -> str:
    doc = dissection_to_dict(d)
    parts = [
        f'  "format": {json.dumps(doc["format"])}',
        f'  "source": {_layout(figure_to_dict(close_residual(d.source, tol)), "elements", "  ")}',
        f'  "target": {_layout(figure_to_dict(close_residual(d.target, tol)), "elements", "  ")}',
    ]
    rows = ",\n".join(f"    {json.dumps(p)}" for p in doc["pieces"])
    parts.append(f'  "pieces": [\n{rows}\n  ]' if rows else '  "pieces": []')
    return "{\n" + ",\n".join(parts) + "\n}\n"


def loads_dissection(text: str, tol: Tolerance = DEFAULT_TOL) -> Dissection:
    return dissection_from_dict(_parse(text), tol)


def read_dissection(path, tol: Tolerance = DEFAULT_TOL) -> Dissection:
    return loads_dissection(_read(path), tol)


def write_dissection(path, d: Dissection) -> None:
    Path(path).write_text(dumps_dissection(d))


def _parse(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
