"""Command-line interface.

Every invocation prints one JSON document on stdout (``suite`` streams one
JSON object per line) and diagnostics on stderr.  Exit status: 0 for success
or a true verdict, 1 for a false verdict, 2 for bad input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import io
from .dissect import NotEquidecomposable, dissect, verify
from .figure import (
    ArcSignature,
    area,
    areas_match,
    boundary_stably_equidecomposable,
    circle,
    equidecomposable,
    lens,
    perimeter,
    profile,
    rectangle,
    signature,
    square,
    stadium,
    validate,
)
from .kernel import GeometryError, Tolerance
from .oval import inner_polygon, is_oval, oval_from_profile, r_offset, uniquely_composed
from .svg import render
from .transform import (
    CornerPair,
    SegmentPair,
    arc_split,
    balance_points,
    corner_pairs,
    double,
    excise_parallelogram,
    hinge_shift,
    random_centrally_symmetric,
    random_polygon,
    round_corners,
    segment_pairs,
)


class UsageError(Exception):
    pass


def _default(o):
    if hasattr(o, "item"):
        return o.item()
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"not serialisable: {type(o).__name__}")


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, default=_default) + "\n")


def _tol(a) -> Tolerance:
    return Tolerance(a.tol_len, a.tol_ang, a.tol_area)


def _fig(path, a, check: bool = True):
    return io.read_figure(path, _tol(a), check)


def _figure_out(c, a, key: str = "figure", oval: bool = False, **extra) -> dict:
    out = getattr(a, "output", None)
    if out:
        Path(out).write_text(io.dumps_figure(c, oval, _tol(a)))
    return {key: io.figure_to_dict(c, oval), **({"output": out} if out else {}), **extra}


def _surgery(res, a) -> dict:
    return _figure_out(res.figure, a, areaDelta=res.area_delta, signatureDelta=res.signature_delta,
                       certificate=res.certificate)


def _point(p) -> dict:
    return {"t": p.t, "point": list(p.point), "heading": p.heading}


# --- commands ----------------------------------------------------------------------

def cmd_validate(a) -> int:
    rep = validate(_fig(a.file, a, check=False), _tol(a))
    _emit(rep.as_dict())
    return 0 if rep.ok else 1


def cmd_area(a) -> int:
    c = _fig(a.file, a)
    _emit({"area": area(c, _tol(a)), "perimeter": perimeter(c)})
    return 0


def cmd_signature(a) -> int:
    _emit(signature(_fig(a.file, a), _tol(a)).as_dict())
    return 0


def cmd_profile(a) -> int:
    p = profile(_fig(a.file, a), _tol(a))
    _emit({"breakpoints": [[r, v] for r, v in p.breakpoints]})
    return 0


def cmd_is_oval(a) -> int:
    v = is_oval(_fig(a.file, a), _tol(a), route=a.route)
    _emit({"is_oval": v})
    return 0 if v else 1


def cmd_unique(a) -> int:
    v = uniquely_composed(_fig(a.file, a), _tol(a))
    _emit({"uniquely_composed": v})
    return 0 if v else 1


def cmd_oval_of(a) -> int:
    v = oval_from_profile(signature(_fig(a.file, a), _tol(a)), _tol(a))
    _emit(_figure_out(v.chain, a, "oval", True, axisA=v.axis_a_length, axisB=v.axis_b_length,
                      profile=v.profile.as_dict()))
    return 0


def cmd_equidecomposable(a) -> int:
    t = _tol(a)
    f, g = _fig(a.a, a), _fig(a.b, a)
    v = equidecomposable(f, g, t)
    _emit({"equidecomposable": v, "areas": [area(f, t), area(g, t)], "areasMatch": areas_match(f, g, t),
           "signaturesMatch": boundary_stably_equidecomposable(f, g, t)})
    return 0 if v else 1


def cmd_dissect(a) -> int:
    t = _tol(a)
    try:
        d = dissect(_fig(a.a, a), _fig(a.b, a), t)
    except NotEquidecomposable as exc:
        _emit({"equidecomposable": False, "clause": exc.clause})
        return 1
    if a.output:
        Path(a.output).write_text(io.dumps_dissection(d, t))
        _emit({"equidecomposable": True, "pieces": len(d.pieces), "output": a.output})
    else:
        _emit(io.dissection_to_dict(d))
    return 0


def cmd_verify(a) -> int:
    rep = verify(io.read_dissection(a.file, _tol(a)), a.samples, a.seed, _tol(a))
    _emit(rep.as_dict())
    return 0 if rep.passed else 1


def cmd_offset(a) -> int:
    _emit(_figure_out(r_offset(_fig(a.file, a), a.radius, _tol(a)), a))
    return 0


def cmd_inner(a) -> int:
    _emit(_figure_out(inner_polygon(_fig(a.file, a), a.radius, _tol(a)), a))
    return 0


def cmd_excise(a) -> int:
    c = _fig(a.file, a)
    if a.pair:
        pair = SegmentPair(*a.pair)
    else:
        pairs = segment_pairs(c, _tol(a))
        if not pairs:
            raise UsageError("figure has no symmetric segment pair")
        pair = pairs[0]
    _emit(_surgery(excise_parallelogram(c, pair, _tol(a)), a))
    return 0


def cmd_hinge(a) -> int:
    c = _fig(a.file, a)
    if a.pairs:
        i, j, k, m = a.pairs
        pairs = (CornerPair(i, j), CornerPair(k, m))
    else:
        found = corner_pairs(c, _tol(a))
        if len(found) < 2:
            raise UsageError(f"need two symmetric corner pairs, found {len(found)}")
        pairs = (found[0], found[1])
    _emit(_surgery(hinge_shift(c, pairs, _tol(a), a.theta), a))
    return 0


def cmd_double(a) -> int:
    c = _fig(a.file, a)
    pa, pb = balance_points(c, _tol(a))
    minus, plus = double(c, pa, pb, _tol(a))
    for fig, path in ((minus, a.out_minus), (plus, a.out_plus)):
        if path:
            Path(path).write_text(io.dumps_figure(fig, False, _tol(a)))
    _emit({"cut": [_point(pa), _point(pb)], "minus": io.figure_to_dict(minus), "plus": io.figure_to_dict(plus),
           "areas": [area(minus, _tol(a)), area(plus, _tol(a))], "area": area(c, _tol(a))})
    return 0


def cmd_balance(a) -> int:
    c = _fig(a.file, a)
    pa, pb = balance_points(c, _tol(a))
    alpha, beta = arc_split(c, pa, pb, _tol(a))
    _emit({"a": _point(pa), "b": _point(pb), "alpha": alpha, "beta": beta})
    return 0


def cmd_round_corners(a) -> int:
    _emit(_surgery(round_corners(_fig(a.file, a), _tol(a)), a))
    return 0


def _signature_arg(text: str) -> ArcSignature:
    try:
        d = json.loads(text)
        return ArcSignature(float(d.get("corners", 0.0)), tuple((float(r), float(s)) for r, s in d.get("arcs", [])),
                            float(d.get("segTotal", 0.0)))
    except (ValueError, TypeError, AttributeError) as exc:
        raise UsageError(f"bad signature {text!r}: {exc}") from exc


def cmd_generate(a) -> int:
    k = a.kind
    if k == "circle":
        c = circle(a.r)
    elif k == "lens":
        c = lens(a.r, a.omega)
    elif k == "square":
        c = square(a.side)
    elif k == "rectangle":
        c = rectangle(a.width, a.height)
    elif k == "stadium":
        c = stadium(a.r, a.length)
    elif k == "polygon":
        c = random_polygon(a.n, a.seed)
    else:
        if not a.signature:
            raise UsageError(f"generate {k} needs --signature")
        sig = _signature_arg(a.signature)
        if k == "oval":
            c = oval_from_profile(sig, _tol(a)).chain
        else:
            c = random_centrally_symmetric(sig, a.seed, _tol(a))
    _emit(_figure_out(c, a, oval=k == "oval"))
    return 0


def cmd_render(a) -> int:
    doc = io._parse(io._read(a.file))
    fmt = doc.get("format") if isinstance(doc, dict) else None
    if fmt == io.DISSECTION_FORMAT:
        obj = io.dissection_from_dict(doc, _tol(a))
    elif fmt == io.FIGURE_FORMAT:
        obj = io.figure_from_dict(doc, _tol(a))
    else:
        raise io.FormatError(f"unsupported format {fmt!r}")
    svg = render(obj, a.size)
    if a.output:
        Path(a.output).write_text(svg)
        _emit({"output": a.output, "bytes": len(svg.encode())})
    else:
        _emit({"svg": svg})
    return 0


def cmd_suite(a) -> int:
    from .suites import DEFAULT_COUNTS, run

    wanted = a.criterion or sorted(DEFAULT_COUNTS)
    results = {}
    ok = True
    for n in wanted:
        if n not in DEFAULT_COUNTS:
            raise UsageError(f"no suite for criterion {n}")
        res = run(n, a.seed, a.count, a.samples, _tol(a))
        results[n] = res
        for chk in res.checks:
            _emit({"criterion": n, "suite": res.name, **chk})
        _emit(res.summary())
        ok = ok and res.passed
    if a.figures:
        from . import report

        out = Path(a.figures)
        out.mkdir(parents=True, exist_ok=True)
        if 10 in results:
            p = report.excess_scatter(results[10], out / "excess_scatter.png")
            print(f"wrote {p}", file=sys.stderr)
        if 5 in results and 9 in results:
            p = report.excess_histograms(results[5], results[9], out / "area_diameter_excess.png")
            print(f"wrote {p}", file=sys.stderr)
    return 0 if ok else 1


# --- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-len", type=float, default=1e-9, help="length tolerance")
    common.add_argument("--tol-ang", type=float, default=1e-9, help="angle tolerance")
    common.add_argument("--tol-area", type=float, default=1e-9, help="relative area tolerance")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--samples", type=int, default=100_000, help="verification sample count")

    p = argparse.ArgumentParser(prog="circpoly", description="Scissors congruence for circular polygons.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_, *files, output=False):
        s = sub.add_parser(name, parents=[common], help=help_)
        for f in files:
            s.add_argument(f)
        if output:
            s.add_argument("-o", "--output", help="write the resulting file here")
        s.set_defaults(fn=fn)
        return s

    add("validate", cmd_validate, "check chain invariants", "file")
    add("area", cmd_area, "area and perimeter", "file")
    add("signature", cmd_signature, "arc signature", "file")
    add("profile", cmd_profile, "profile breakpoints", "file")
    s = add("is-oval", cmd_is_oval, "oval test", "file")
    s.add_argument("--route", choices=("congruence", "clauses", "both"), default="congruence")
    add("unique", cmd_unique, "uniquely composed test", "file")
    add("oval-of", cmd_oval_of, "oval of the figure's signature", "file", output=True)
    add("equidecomposable", cmd_equidecomposable, "decide scissors congruence", "a", "b")
    add("dissect", cmd_dissect, "build a dissection certificate", "a", "b", output=True)
    add("verify", cmd_verify, "check a dissection certificate", "file")
    s = add("offset", cmd_offset, "R-neighbourhood", "file", output=True)
    s.add_argument("radius", type=float)
    s = add("inner", cmd_inner, "inverse of offset", "file", output=True)
    s.add_argument("radius", type=float)
    s = add("excise", cmd_excise, "parallelogram excision", "file", output=True)
    s.add_argument("--pair", type=int, nargs=2, metavar=("I", "J"))
    s = add("hinge", cmd_hinge, "four-hinge shift", "file", output=True)
    s.add_argument("--pairs", type=int, nargs=4, metavar=("I", "J", "K", "L"))
    s.add_argument("--theta", type=float)
    s = add("double", cmd_double, "double both halves at balance points", "file")
    s.add_argument("--out-minus")
    s.add_argument("--out-plus")
    add("balance", cmd_balance, "balanced antipodal support points", "file")
    add("round-corners", cmd_round_corners, "replace the corner pair by arcs", "file", output=True)
    s = add("generate", cmd_generate, "construct or sample a figure", output=True)
    s.add_argument("kind", choices=("circle", "lens", "square", "rectangle", "stadium", "polygon", "symmetric", "oval"))
    s.add_argument("--r", type=float, default=1.0)
    s.add_argument("--omega", type=float, default=math.pi)
    s.add_argument("--side", type=float, default=1.0)
    s.add_argument("--width", type=float, default=2.0)
    s.add_argument("--height", type=float, default=1.0)
    s.add_argument("--length", type=float, default=1.0)
    s.add_argument("--n", type=int, default=6)
    s.add_argument("--signature", help='JSON, e.g. {"corners": 3.14, "arcs": [[1, 3.14]], "segTotal": 2}')
    s = add("render", cmd_render, "SVG of a figure or dissection", "file", output=True)
    s.add_argument("--size", type=float, default=400.0)
    s = add("suite", cmd_suite, "run property suites (JSON lines)")
    s.add_argument("--criterion", type=int, action="append", help="criterion number; repeatable")
    s.add_argument("--count", type=int, help="cases per class (default: the acceptance count)")
    s.add_argument("--figures", help="directory for PNG figures")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        _tol(a)
        return a.fn(a)
    except (GeometryError, UsageError, ValueError, OSError) as exc:
        print(f"circpoly {a.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
