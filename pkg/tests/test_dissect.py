from __future__ import annotations

import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from matplotlib.path import Path as MplPath

from circpoly.dissect import (
    AreaMismatch,
    Degenerate,
    Dissection,
    FigureMismatch,
    NotEquidecomposable,
    Piece,
    Placement,
    SweepTooLarge,
    chord_arcs,
    compose,
    dissect,
    identity_dissection,
    polygons_dissect,
    rectangle_to_width,
    triangle_to_rectangle,
    verify,
)
from circpoly.figure import area, circle, congruent, equidecomposable, lens, polygon, rectangle, square
from circpoly.kernel import Isometry
from circpoly.region import ArcEdge
from circpoly.suites import DECISION_CLASSES, decision_pair
from circpoly.transform import dilate, random_polygon

SAMPLES = 100_000


def placed_outline(piece: Piece, m: Isometry, n: int = 64) -> np.ndarray:
    pts = []
    for e in piece.edges:
        if isinstance(e, ArcEdge):
            pts.append(e.points(n)[:-1])
        else:
            pts.append(np.array([e.a]))
    return m.apply_array(np.vstack(pts))


def sampled_coverage(fig, pieces, poses, n: int = 40_000) -> np.ndarray:
    """Cover counts at random points inside ``fig`` (independent point-in-polygon).

    Random rather than grid points: a grid lines up with axis-parallel cuts.
    """
    x0, y0, x1, y1 = fig.region.bbox
    rng = np.random.default_rng(11)
    pts = rng.uniform((x0, y0), (x1, y1), size=(n, 2))
    inside = MplPath(placed_outline(Piece("f", fig.edges), Isometry(), 512)).contains_points(pts)
    pts = pts[inside]
    counts = np.zeros(len(pts), dtype=int)
    for pc, m in zip(pieces, poses):
        counts += MplPath(placed_outline(pc, m)).contains_points(pts)
    return counts


def assert_exact_cover(d: Dissection, min_fraction: float = 0.995) -> None:
    for fig, key in ((d.source, "source"), (d.target, "target")):
        counts = sampled_coverage(fig, d.pieces, [getattr(p, key) for p in d.placements])
        assert np.mean(counts == 1) >= min_fraction


def assert_verified(d: Dissection) -> None:
    rep = verify(d, SAMPLES)
    assert rep.passed, rep.as_dict()
    assert rep.coverage_defect <= 2e-3 and rep.containment_defect <= 2e-3
    total = math.fsum(p.area for p in d.pieces)
    assert total == pytest.approx(area(d.source), rel=1e-9)


# --- chord_arcs -------------------------------------------------------------------

def test_chord_circle_quarters():
    core, lumps = chord_arcs(circle(1.0), {0: [math.pi / 2] * 4})
    assert core.area == pytest.approx(2.0, rel=1e-12)
    assert len(lumps) == 4
    assert all(p.area == pytest.approx((math.pi / 2 - 1) / 2, rel=1e-12) for p in lumps)


def test_chord_lens_eighths():
    c = lens(1.0, math.pi)
    core, lumps = chord_arcs(c, {k: [math.pi / 4] * 2 for k, e in enumerate(c.elements) if hasattr(e, "radius")})
    assert len(core.vertices) == 4 and len(lumps) == 4
    assert core.area + sum(p.area for p in lumps) == pytest.approx(area(c), rel=1e-12)


def test_chord_square_has_no_lumps():
    core, lumps = chord_arcs(square(2.0))
    assert lumps == []
    assert core.area == pytest.approx(4.0)


def test_chord_rejects_large_sweep():
    with pytest.raises(SweepTooLarge):
        chord_arcs(circle(1.0), {0: [math.pi, math.pi]})
    with pytest.raises(SweepTooLarge):
        chord_arcs(circle(1.0), {0: [1.0, 1.0]})


@given(st.sampled_from(DECISION_CLASSES), st.integers(0, 10 ** 6))
@settings(max_examples=20)
def test_chording_conserves_area(cls, seed):
    f, _ = decision_pair(cls, seed, 0, True)
    core, lumps = chord_arcs(f)
    assert core.area + math.fsum(p.area for p in lumps) == pytest.approx(area(f), rel=1e-9)
    assert all(isinstance(e, ArcEdge) and e.sweep <= math.pi / 2 + 1e-12
               for p in lumps for e in p.edges if isinstance(e, ArcEdge))


# --- triangles and rectangles -----------------------------------------------------

def test_right_triangle_to_rectangle():
    d = triangle_to_rectangle([(0, 0), (4, 0), (0, 3)])
    assert len(d) == 3
    assert congruent(d.target, rectangle(5.0, 1.2)) is not None
    assert area(d.target) == pytest.approx(6.0)
    assert_verified(d)
    assert_exact_cover(d)


def test_equilateral_triangle_to_rectangle():
    d = triangle_to_rectangle([(0, 0), (2, 0), (1, math.sqrt(3))])
    assert congruent(d.target, rectangle(2.0, math.sqrt(3) / 2)) is not None
    assert_verified(d)


def test_sliver_triangle_is_degenerate():
    with pytest.raises(Degenerate):
        triangle_to_rectangle([(0, 0), (1, 0), (0.5, 1e-10)])


def test_rectangle_to_width_examples():
    d = rectangle_to_width([(0, 0), (1, 0), (1, 6), (0, 6)], 2.0)
    assert congruent(d.target, rectangle(2.0, 3.0)) is not None
    assert_verified(d)
    d = rectangle_to_width([(0, 0), (1, 0), (1, 1), (0, 1)], 1.0)
    assert len(d) == 1
    d = rectangle_to_width([(0, 0), (1, 0), (1, 10), (0, 10)], 3.0)
    assert congruent(d.target, rectangle(3.0, 10 / 3)) is not None
    assert 1 < len(d) <= 30
    assert_verified(d)
    assert_exact_cover(d)
    with pytest.raises(Degenerate):
        rectangle_to_width([(0, 0), (1, 0), (1, 1), (0, 1)], 0.0)


@given(st.floats(0.2, 5.0), st.floats(0.2, 5.0), st.floats(0.2, 5.0))
@settings(max_examples=25)
def test_rectangle_to_width_property(a, b, w):
    d = rectangle_to_width([(0, 0), (a, 0), (a, b), (0, b)], w)
    assert congruent(d.target, rectangle(w, a * b / w)) is not None
    assert verify(d, 20_000).passed


# --- polygons_dissect / compose -------------------------------------------------------

def test_square_to_rectangle():
    d = polygons_dissect(square(2.0), rectangle(1.0, 4.0))
    assert_verified(d)
    assert_exact_cover(d)


def test_square_to_itself_is_one_piece():
    assert len(polygons_dissect(square(2.0), square(2.0).moved(Isometry(0.3, (5, 1))))) == 1


def test_square_to_right_triangle():
    d = polygons_dissect(square(2.0), polygon([(0, 0), (4, 0), (0, 2)]))
    assert_verified(d)
    assert_exact_cover(d)


def test_polygons_area_mismatch():
    with pytest.raises(AreaMismatch):
        polygons_dissect(square(2.0), rectangle(1.0, 4.1))


@st.composite
def equal_area_polygons(draw):
    p = random_polygon(draw(st.integers(3, 8)), draw(st.integers(0, 10 ** 6)))
    q = random_polygon(draw(st.integers(3, 8)), draw(st.integers(0, 10 ** 6)))
    return p, dilate(q, math.sqrt(area(p) / area(q)))


@given(equal_area_polygons())
@settings(max_examples=20)
def test_polygons_dissect_property(pq):
    p, q = pq
    assert_verified(polygons_dissect(p, q))


def test_compose_identity():
    d = polygons_dissect(square(2.0), rectangle(1.0, 4.0))
    e = compose(identity_dissection(square(2.0)), d)
    assert len(e) == len(d)
    assert sorted(round(p.area, 12) for p in e.pieces) == sorted(round(p.area, 12) for p in d.pieces)
    assert_verified(e)


def test_compose_two_triangle_chains():
    tri = [(0, 0), (4, 0), (1, 3)]
    d1 = triangle_to_rectangle(tri)
    d2 = triangle_to_rectangle([(0, 0), (4, 0), (3, 3)])
    d = compose(d1, d2.inverse())
    assert len(d) <= 9
    assert_verified(d)


def test_compose_mismatch():
    d1 = polygons_dissect(square(2.0), rectangle(1.0, 4.0))
    with pytest.raises(FigureMismatch):
        compose(d1, identity_dissection(square(2.0)))


def test_compose_associativity():
    a = polygons_dissect(square(2.0), rectangle(1.0, 4.0))
    b = polygons_dissect(rectangle(1.0, 4.0), polygon([(0, 0), (4, 0), (0, 2)]))
    c = polygons_dissect(polygon([(0, 0), (4, 0), (0, 2)]), polygon([(0, 0), (4, 0), (1, 2)]))
    left = compose(compose(a, b), c)
    right = compose(a, compose(b, c))
    assert_verified(left)
    assert_verified(right)
    assert len(compose(a, b)) <= len(a) * len(b)


# --- dissect ------------------------------------------------------------------------

def test_dissect_square_rectangle():
    d = dissect(square(2.0), rectangle(1.0, 4.0))
    assert_verified(d)


def test_dissect_circle_rotated_is_one_piece():
    c = circle(1.0)
    d = dissect(c, c.moved(Isometry(1.0, (3, 2))))
    assert len(d) == 1
    assert_verified(d)


def test_dissect_lens_family():
    sig_pair = decision_pair("lens", 7, 0, True)
    f, g = sig_pair
    d = dissect(f, g)
    assert_verified(d)
    assert_exact_cover(d)
    fr, gr = decision_pair("lens", 7, 3, False)
    with pytest.raises(NotEquidecomposable) as exc:
        dissect(fr, gr)
    assert exc.value.clause == "areas"


def test_dissect_reports_signature_clause():
    with pytest.raises(NotEquidecomposable) as exc:
        dissect(circle(1.0), square(math.sqrt(math.pi)))
    assert exc.value.clause == "arc signatures"


@given(st.sampled_from(DECISION_CLASSES), st.integers(0, 10 ** 6), st.integers(0, 40))
@settings(max_examples=24)
def test_dissect_soundness_and_completeness(cls, seed, i):
    f, g = decision_pair(cls, seed, i, i % 2 == 0)
    if equidecomposable(f, g):
        d = dissect(f, g)
        assert verify(d, SAMPLES).passed
        # every arc-edged piece is a lump carried onto an arc of equal radius
        for pc, pl in zip(d.pieces, d.placements):
            arcs = [e for e in pc.edges if isinstance(e, ArcEdge)]
            for e in arcs:
                for fig, m in ((f, pl.source), (g, pl.target)):
                    pts = m.apply_array(e.points(8))
                    assert np.all(np.abs(fig.region.depth(pts)) <= 1e-7)
    else:
        with pytest.raises(NotEquidecomposable):
            dissect(f, g)


# --- verify ------------------------------------------------------------------------

def test_verify_detects_shifted_piece():
    d = polygons_dissect(square(2.0), rectangle(1.0, 4.0))
    pl = d.placements[0]
    bad = replace(d, placements=(Placement(pl.source, Isometry(0.0, (0.1, 0.0)) @ pl.target),) + d.placements[1:])
    rep = verify(bad, SAMPLES)
    assert not rep.passed
    assert rep.coverage_defect > 2e-3
    assert rep.max_overlap_depth >= 2


def test_verify_empty_dissection():
    f = square(2.0)
    rep = verify(Dissection(f, f, (), ()))
    assert not rep.passed
    assert rep.area_residuals[0] == pytest.approx(-4.0)
    assert rep.coverage_defect == 1.0


def test_verify_is_deterministic():
    d = dissect(square(2.0), rectangle(1.0, 4.0))
    assert verify(d, 20_000, seed=3) == verify(d, 20_000, seed=3)
