"""Hypothesis strategies shared by the property tests."""

from __future__ import annotations

import math

import numpy as np
from hypothesis import strategies as st

from circpoly.figure import circle, lens, stadium
from circpoly.kernel import TAU, Isometry
from circpoly.suites import class_signature, generate
from circpoly.transform import random_polygon

coords = st.floats(-10.0, 10.0, allow_nan=False)
points = st.tuples(coords, coords)
angles = st.floats(0.0, TAU, exclude_max=True, allow_nan=False)
isometries = st.builds(Isometry, angles, points, st.booleans())
seeds = st.integers(0, 2 ** 30)

polygons = st.builds(random_polygon, st.integers(3, 10), seeds)
circles = st.builds(circle, st.floats(0.1, 5.0))
lenses = st.builds(lens, st.floats(0.2, 3.0), st.floats(0.3, TAU - 0.3))
stadiums = st.builds(stadium, st.floats(0.2, 3.0), st.floats(0.1, 4.0))


@st.composite
def symmetric_figures(draw, segments: bool | None = None):
    cls = draw(st.sampled_from(["lens_pi/2", "lens_pi", "lens_3pi/2", "three_radius"]))
    seed = draw(seeds)
    rng = np.random.default_rng(seed)
    with_seg = draw(st.booleans()) if segments is None else segments
    sig = class_signature(cls, rng, float(rng.uniform(0.2, 2.0)) if with_seg else 0.0)
    return generate(sig, seed)


figures = st.one_of(polygons, circles, lenses, stadiums, symmetric_figures())


def close(a: float, b: float, tol: float = 1e-9) -> bool:
    return math.isclose(a, b, rel_tol=tol, abs_tol=tol)
