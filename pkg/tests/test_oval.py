from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np
import pytest
from _strategies import figures, polygons, seeds
from hypothesis import given, settings
from hypothesis import strategies as st

from circpoly.figure import (
    Arc,
    ArcSignature,
    Corner,
    area,
    chain,
    circle,
    congruent,
    lens,
    perimeter,
    signature,
    square,
    stadium,
    validate,
)
from circpoly.kernel import TAU
from circpoly.oval import (
    DegenerateCore,
    LensSpec,
    NoOvalExists,
    RadiusTooSmall,
    inner_polygon,
    is_oval,
    oval_clauses,
    oval_from_profile,
    r_offset,
    uniquely_composed,
)
from circpoly.suites import random_step_profile

ORACLES = json.loads((Path(__file__).parent / "oracles" / "values.json").read_text())["values"]


def mc_band(key: str) -> tuple[float, float]:
    v = ORACLES[key]
    return v["area"] - 3 * v["sigma"], v["area"] + 3 * v["sigma"]


# --- oval_from_profile -------------------------------------------------------

def test_circle_profile_gives_circle():
    v = oval_from_profile(ArcSignature(0.0, ((2.5, TAU),)))
    assert congruent(v.chain, circle(2.5)) is not None
    assert math.isclose(v.axis_a_length, 5.0, rel_tol=1e-12)
    assert math.isclose(v.axis_b_length, 5.0, rel_tol=1e-12)


@pytest.mark.parametrize("omega", [math.pi / 2, math.pi, 1.5 * math.pi])
def test_lens_profile_gives_lens(omega):
    v = oval_from_profile(ArcSignature(TAU - omega, ((1.0, omega),)))
    assert congruent(v.chain, lens(1.0, omega)) is not None
    assert congruent(LensSpec(1.0, omega).oval().chain, lens(1.0, omega)) is not None


def test_polygon_profile_has_no_oval():
    with pytest.raises(NoOvalExists):
        oval_from_profile(ArcSignature(TAU, (), 8.0))


def test_lens_spec_rejects_bad_parameters():
    with pytest.raises(ValueError):
        LensSpec(0.0, 1.0)
    with pytest.raises(ValueError):
        LensSpec(1.0, 7.0)


def test_oval_quarter_structure():
    sig = ArcSignature(math.pi / 2, ((1.0, math.pi / 2), (2.0, math.pi / 2), (3.0, math.pi / 2)))
    v = oval_from_profile(sig)
    els = v.chain.elements
    assert validate(v.chain).ok
    # corner, then radii rising to the widest arc and falling again
    assert isinstance(els[0], Corner) and math.isclose(els[0].turn, math.pi / 4)
    radii = [e.radius for e in els[1:6]]
    assert radii == [1.0, 2.0, 3.0, 2.0, 1.0]
    assert math.isclose(els[3].sweep, math.pi / 4)
    assert math.isclose(els[1].sweep, math.pi / 8)


def test_equal_radii_are_merged():
    v = oval_from_profile(ArcSignature(0.0, ((1.0, math.pi), (1.0 + 1e-12, math.pi))))
    assert congruent(v.chain, circle(1.0)) is not None


@given(seeds)
@settings(max_examples=30)
def test_profile_fixpoint(seed):
    sig = random_step_profile(np.random.default_rng(seed))
    v = oval_from_profile(sig)
    assert validate(v.chain).ok
    assert signature(v.chain).matches(sig.without_segments(), segments=True)
    assert v.profile.matches(sig)


@given(seeds)
@settings(max_examples=20)
def test_oval_uniqueness(seed):
    sig = random_step_profile(np.random.default_rng(seed))
    a = oval_from_profile(sig)
    b = oval_from_profile(ArcSignature(sig.corners, tuple(reversed(sig.arcs))))
    assert congruent(a.chain, b.chain) is not None


# --- is_oval / uniquely_composed --------------------------------------------------

@pytest.mark.parametrize("route", ["congruence", "clauses", "both"])
def test_is_oval_examples(route):
    assert is_oval(circle(1.0), route=route)
    assert is_oval(lens(1.0, math.pi), route=route)
    assert not is_oval(stadium(1.0, 2.0), route=route)
    assert not is_oval(square(2.0), route=route)


def test_stadium_fails_only_the_segment_clause():
    cl = oval_clauses(stadium(1.0, 2.0))
    assert cl["no_segments"] is False


def test_non_monotone_radii_are_not_an_oval():
    # centrally symmetric, mirror-symmetric, but radii fall then rise within a quarter
    q = [Arc(2.0, math.pi / 8), Arc(1.0, math.pi / 4), Arc(2.0, math.pi / 8)]
    c = chain(q + q[::-1] + q + q[::-1])
    assert validate(c).ok
    assert not is_oval(c, route="both")


def test_uniquely_composed_examples():
    assert uniquely_composed(circle(1.0))
    assert not uniquely_composed(square(1.0))
    sig = ArcSignature(0.0, ((1.0, TAU / 3), (2.0, TAU / 3), (3.0, TAU / 3)))
    v = oval_from_profile(sig)
    assert all(oval_clauses(v.chain).values())
    assert uniquely_composed(v.chain)


@given(figures)
@settings(max_examples=40)
def test_oval_routes_agree(c):
    assert is_oval(c, route="congruence") == is_oval(c, route="clauses")


@given(seeds)
@settings(max_examples=25)
def test_generated_ovals_pass_both_routes(seed):
    v = oval_from_profile(random_step_profile(np.random.default_rng(seed)))
    assert is_oval(v.chain, route="both")


# --- r_offset / inner_polygon -------------------------------------------------------

def test_square_offset_area():
    off = r_offset(square(2.0), 1.0)
    assert math.isclose(area(off), 12.0 + math.pi, rel_tol=1e-12)
    lo, hi = mc_band("square2_offset1")
    assert lo <= area(off) <= hi


def test_circle_offset_is_circle():
    assert congruent(r_offset(circle(1.5), 0.5), circle(2.0)) is not None


def test_lens_offset_signature():
    sig = signature(r_offset(lens(1.0, math.pi), 1.0))
    assert sig.corners == 0.0
    assert sig.matches(ArcSignature(0.0, ((1.0, math.pi), (2.0, math.pi))))


def test_inner_polygon_of_circle_is_degenerate():
    with pytest.raises(DegenerateCore) as exc:
        inner_polygon(circle(1.0), 1.0)
    assert exc.value.witness_area == pytest.approx(0.0, abs=1e-12)


def test_inner_polygon_of_stadium():
    with pytest.raises(DegenerateCore):
        inner_polygon(stadium(1.0, 2.0), 1.0)
    half = inner_polygon(stadium(1.0, 2.0), 0.5)
    assert congruent(half, stadium(0.5, 2.0)) is not None


def test_inner_polygon_round_trip_square():
    assert congruent(inner_polygon(r_offset(square(1.0), 1.0), 1.0), square(1.0)) is not None


def test_inner_polygon_radius_too_small():
    with pytest.raises(RadiusTooSmall):
        inner_polygon(circle(1.0), 2.0)
    with pytest.raises(RadiusTooSmall):
        inner_polygon(square(1.0), 0.1)


@given(figures, st.floats(0.05, 3.0))
def test_offset_area_formula(c, r):
    off = r_offset(c, r)
    assert validate(off).ok
    expected = area(c) + perimeter(c) * r + math.pi * r * r
    assert math.isclose(area(off), expected, rel_tol=1e-9)


@given(figures, st.floats(0.05, 3.0))
def test_offset_round_trip(c, r):
    assert congruent(inner_polygon(r_offset(c, r), r), c) is not None


@given(polygons, st.floats(0.05, 3.0))
def test_circle_minimality(p, r):
    assert area(r_offset(p, r)) > math.pi * r * r
