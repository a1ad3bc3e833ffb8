"""Seeded property suites.

Each suite returns a :class:`SuiteResult` holding one record per check;
``run`` streams them as JSON-ready dicts.  Everything is deterministic
given ``seed``: every case draws from its own ``default_rng([seed, ...])``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .dissect import NotEquidecomposable, dissect, verify
from .figure import (
    ArcSignature,
    ConvexChain,
    Seg,
    area,
    areas_match,
    boundary_stably_equidecomposable,
    circle,
    congruent,
    diameter,
    equidecomposable,
    hausdorff_distance,
    lens,
    perimeter,
    polygon,
    rectangle,
    signature,
    square,
    validate,
    width,
)
from .kernel import DEFAULT_TOL, TAU, Tolerance
from .oval import NoOvalExists, inner_polygon, is_oval, oval_from_profile, r_offset
from .transform import (
    FoldOver,
    InfeasibleSignature,
    corner_pairs,
    dilate,
    excise_parallelogram,
    hinge_shift,
    random_centrally_symmetric,
    random_polygon,
    segment_pairs,
    with_area,
)

LENS_OMEGAS = {"lens_pi/2": math.pi / 2, "lens_pi": math.pi, "lens_3pi/2": 1.5 * math.pi}
DEFECT_BOUND = 2e-3
DISTANCE_RATIO = 0.05
DECISION_CLASSES = ("polygon", "lens", "three_radius")


@dataclass(frozen=True)
class SuiteResult:
    criterion: int
    name: str
    checks: tuple[dict, ...]
    seconds: float
    budget: float | None = None
    extra: dict = field(default_factory=dict)

    @property
    def failures(self) -> list[dict]:
        return [c for c in self.checks if not c["passed"]]

    @property
    def passed(self) -> bool:
        in_time = self.budget is None or self.seconds < self.budget
        return bool(self.checks) and not self.failures and in_time

    def summary(self) -> dict:
        return {
            "criterion": self.criterion,
            "suite": self.name,
            "summary": True,
            "passed": self.passed,
            "checks": len(self.checks),
            "failures": len(self.failures),
            "seconds": round(self.seconds, 3),
            "budget": self.budget,
        }


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng([seed, *key])


def _check(case: str, passed: bool, **values) -> dict:
    return {"case": case, "passed": bool(passed), **values}


# --- generators -------------------------------------------------------------

def lens_signature(omega: float, radius: float = 1.0, seg_total: float = 0.0) -> ArcSignature:
    return ArcSignature(TAU - omega, ((radius, omega),), seg_total)


def three_radius_signature(rng: np.random.Generator, seg_total: float = 0.0) -> ArcSignature:
    """Three distinct radii in [0.5, 2] and a corner bucket, sweeps drawn at random."""
    while True:
        radii = np.sort(rng.uniform(0.5, 2.0, 3))
        if np.min(np.diff(radii)) > 0.05:
            break
    w = TAU * (0.04 + 0.84 * rng.dirichlet(np.ones(4)))
    w[3] = TAU - math.fsum(w[:3])
    return ArcSignature(float(w[3]), tuple((float(r), float(s)) for r, s in zip(radii, w[:3])), seg_total)


def class_signature(cls: str, rng: np.random.Generator, seg_total: float = 0.0) -> ArcSignature:
    if cls in LENS_OMEGAS:
        return lens_signature(LENS_OMEGAS[cls], float(rng.uniform(0.5, 2.0)), seg_total)
    if cls == "three_radius":
        return three_radius_signature(rng, seg_total)
    raise ValueError(f"unknown signature class {cls!r}")


def generate(sig: ArcSignature, seed: int, tol: Tolerance = DEFAULT_TOL) -> ConvexChain:
    """``random_centrally_symmetric`` with seeded retries on infeasible draws."""
    for k in range(50):
        try:
            return random_centrally_symmetric(sig, seed * 64 + k, tol)
        except InfeasibleSignature:
            continue
    raise InfeasibleSignature(f"no figure for {sig}")


def decision_pair(cls: str, seed: int, i: int, want: bool) -> tuple[ConvexChain, ConvexChain]:
    """A pair in class ``polygon``, ``lens`` or ``three_radius``.

    True pairs share area and positive-radius signature; false pairs break
    exactly one of the two (alternating).
    """
    rng = _rng(seed, 2, DECISION_CLASSES.index(cls), i)
    if cls == "polygon":
        f = random_polygon(int(rng.integers(3, 9)), int(rng.integers(1 << 30)))
        g = random_polygon(int(rng.integers(3, 9)), int(rng.integers(1 << 30)))
        target = area(f) * (1.0 if want else float(rng.uniform(1.05, 1.3)))
        return f, dilate(g, math.sqrt(target / area(g)))
    if cls == "lens":
        omega = float(rng.choice([math.pi / 2, math.pi, 1.5 * math.pi]))
        sig = lens_signature(omega, 1.0, float(rng.uniform(0.5, 3.0)))
    elif cls == "three_radius":
        sig = three_radius_signature(rng, float(rng.uniform(0.5, 3.0)))
    else:
        raise ValueError(f"unknown class {cls!r}")
    seed_f, seed_g = (int(s) for s in rng.integers(1 << 30, size=2))
    f = generate(sig, seed_f)
    g_sig = sig
    if not want and i % 4 == 1:
        # signature mismatch: move one radius
        arcs = list(sig.arcs)
        r, s = arcs[0]
        arcs[0] = (r * float(rng.uniform(1.1, 1.3)), s)
        g_sig = ArcSignature(sig.corners, tuple(arcs), sig.seg_total)
    g = generate(g_sig, seed_g)
    target = max(area(f), area(g))
    f = with_area(f, target)
    if not want and i % 4 == 3:
        target *= float(rng.uniform(1.05, 1.3))
    g = with_area(g, target)
    return f, g


# --- criterion 1 and 3: fixed examples ------------------------------------------

def suite_area(seed: int = 0, count: int = 1, tol: Tolerance = DEFAULT_TOL) -> SuiteResult:
    t0 = time.perf_counter()
    a_circle = area(circle(1.0), tol)
    a_lens = area(lens(1.0, math.pi), tol)
    checks = (
        _check("circle R=1", abs(a_circle - math.pi) <= 1e-9, area=a_circle, expected=math.pi),
        _check("lens L_pi R=1", abs(a_lens - (math.pi / 2 - 1)) <= 1e-9, area=a_lens, expected=math.pi / 2 - 1),
    )
    return SuiteResult(1, "area", checks, time.perf_counter() - t0, 1.0)


def suite_polygon_dissections(seed: int = 0, count: int = 1, samples: int = 100_000,
                              tol: Tolerance = DEFAULT_TOL) -> SuiteResult:
    t0 = time.perf_counter()
    cases = (
        ("square 2x2 <-> rectangle 1x4", square(2.0), rectangle(1.0, 4.0)),
        ("square 2x2 <-> right triangle (4,2)", square(2.0), polygon([(0, 0), (4, 0), (0, 2)])),
    )
    checks = []
    for name, f, g in cases:
        d = dissect(f, g, tol)
        rep = verify(d, samples, seed, tol)
        total = math.fsum(p.area for p in d.pieces)
        rel = abs(total - area(f, tol)) / area(f, tol)
        checks.append(_check(name, rep.passed and rel <= 1e-9, pieces=len(d.pieces),
                             piece_area_rel_error=rel, coverage_defect=rep.coverage_defect,
                             containment_defect=rep.containment_defect))
    return SuiteResult(3, "bolyai_gerwien", tuple(checks), time.perf_counter() - t0, 5.0)


# --- criterion 2: the equidecomposability decision -------------------------------------------

def suite_decision(seed: int = 0, count: int = 100, samples: int = 100_000,
                 tol: Tolerance = DEFAULT_TOL) -> SuiteResult:
    t0 = time.perf_counter()
    checks = []
    for cls in DECISION_CLASSES:
        for i in range(count):
            want = i % 2 == 0
            f, g = decision_pair(cls, seed, i, want)
            decided = equidecomposable(f, g, tol)
            rule = areas_match(f, g, tol) and boundary_stably_equidecomposable(f, g, tol)
            row = {"class": cls, "index": i, "expected": want, "decided": decided}
            ok = decided == rule == want
            if want:
                d = dissect(f, g, tol)
                rep = verify(d, samples, seed, tol)
                ok = ok and rep.passed and max(rep.coverage_defect, rep.containment_defect) <= DEFECT_BOUND
                row.update(pieces=len(d.pieces), coverage_defect=rep.coverage_defect,
                           containment_defect=rep.containment_defect)
            else:
                try:
                    dissect(f, g, tol)
                    ok = False
                except NotEquidecomposable as exc:
                    row["refused"] = exc.clause
            checks.append(_check(f"{cls}#{i}", ok, **row))
    return SuiteResult(2, "decision", tuple(checks), time.perf_counter() - t0, 60.0)


# --- criterion 4: neighbourhoods of polygons ---------------------------------------

def suite_offset(seed: int = 0, count: int = 100, tol: Tolerance = DEFAULT_TOL) -> SuiteResult:
    t0 = time.perf_counter()
    checks = []
    for i in range(count):
        rng = _rng(seed, 4, i)
        p = random_polygon(int(rng.integers(3, 12)), int(rng.integers(1 << 30)), float(rng.uniform(0.2, 3.0)))
        off = r_offset(p, 1.0, tol)
        excess = area(off, tol) - math.pi
        predicted = perimeter(p) + area(p, tol)
        back = inner_polygon(off, 1.0, tol)
        ok = (abs(excess - predicted) <= tol.eps_area * max(1.0, area(off, tol)) and excess > 0
              and congruent(back, p, tol) is not None)
        checks.append(_check(f"polygon#{i}", ok, excess=excess, predicted=predicted))
    return SuiteResult(4, "circle_offset", tuple(checks), time.perf_counter() - t0)


# --- criteria 5, 9, 10: the generated extremality suite --------------------------------

@dataclass(frozen=True)
class ExtremalityCase:
    cls: str
    index: int
    sig: ArcSignature
    figure: ConvexChain
    oval: ConvexChain

    @property
    def segment_free(self) -> bool:
        return not any(isinstance(e, Seg) for e in self.figure.elements)


@lru_cache(maxsize=4)
def extremality_cases(seed: int = 0, count: int = 200) -> tuple[ExtremalityCase, ...]:
    """``count`` centrally symmetric figures per class; odd indices carry segments."""
    out = []
    for k, cls in enumerate((*LENS_OMEGAS, "three_radius")):
        for i in range(count):
            rng = _rng(seed, 5, k, i)
            seg = float(rng.uniform(0.2, 2.0)) if i % 2 else 0.0
            sig = class_signature(cls, rng, seg)
            fig = generate(sig, int(rng.integers(1 << 30)))
            out.append(ExtremalityCase(cls, i, sig, fig, oval_from_profile(sig).chain))
    return tuple(out)


def suite_extremality(seed: int = 0, count: int = 200, tol: Tolerance = DEFAULT_TOL) -> SuiteResult:
    t0 = time.perf_counter()
    checks = []
    for c in extremality_cases(seed, count):
        am, av = area(c.figure, tol), area(c.oval, tol)
        scale = max(am, av)
        excess = am - av
        equal = excess <= tol.eps_area * scale
        ok = excess >= -tol.eps_area * scale and (not equal or congruent(c.figure, c.oval, tol) is not None)
        checks.append(_check(f"{c.cls}#{c.index}", ok, cls=c.cls, area=am, oval_area=av,
                             excess=excess, equality=equal))
    return SuiteResult(5, "oval_extremality", tuple(checks), time.perf_counter() - t0, 120.0)


def suite_diameter(seed: int = 0, count: int = 200, tol: Tolerance = DEFAULT_TOL) -> SuiteResult:
    """Segment-free members only: their boundary is equidecomposable with the oval's."""
    t0 = time.perf_counter()
    checks = []
    for c in extremality_cases(seed, count):
        if not c.segment_free:
            continue
        dm, dv = diameter(c.figure, tol), diameter(c.oval, tol)
        equal = dm >= dv - 1e-9
        ok = dm <= dv + 1e-9 and (not equal or congruent(c.figure, c.oval, tol) is not None)
        checks.append(_check(f"{c.cls}#{c.index}", ok, cls=c.cls, diameter=dm, oval_diameter=dv,
                             excess=dv - dm, equality=equal))
    return SuiteResult(9, "diameter_extremality", tuple(checks), time.perf_counter() - t0)


def suite_excess(seed: int = 0, count: int = 200, tol: Tolerance = DEFAULT_TOL) -> SuiteResult:
    """Scatter (d_H/h, (S(M)-S(V))/h^2); positivity wherever d_H/h exceeds the ratio."""
    t0 = time.perf_counter()
    checks = []
    for c in extremality_cases(seed, count):
        h = width(c.oval, tol)
        dh = hausdorff_distance(c.figure, c.oval, tol=tol)
        x = dh / h
        y = (area(c.figure, tol) - area(c.oval, tol)) / h ** 2
        ok = x <= DISTANCE_RATIO or y > 0
        checks.append(_check(f"{c.cls}#{c.index}", ok, cls=c.cls, dh_over_h=x, excess_over_h2=y,
                             segment_free=c.segment_free))
    return SuiteResult(10, "excess_scatter", tuple(checks), time.perf_counter() - t0)


# --- criterion 6: surgeries ---------------------------------------------------------

def _buckets_equal(a: ArcSignature, b: ArcSignature, tol: Tolerance) -> bool:
    return a.positive_part_matches(b, tol) and len(a.arcs) == len(b.arcs)


def suite_surgery(seed: int = 0, count: int = 100, tol: Tolerance = DEFAULT_TOL) -> SuiteResult:
    t0 = time.perf_counter()
    checks = []
    for i in range(count):
        rng = _rng(seed, 6, 0, i)
        sig = class_signature(str(rng.choice([*LENS_OMEGAS, "three_radius"])), rng, float(rng.uniform(0.5, 3.0)))
        fig = generate(sig, int(rng.integers(1 << 30)))
        pairs = segment_pairs(fig, tol)
        pair = pairs[int(rng.integers(len(pairs)))]
        res = excise_parallelogram(fig, pair, tol)
        ok = (res.area_delta <= tol.eps_area * area(fig, tol) and validate(res.figure, tol).ok
              and _buckets_equal(signature(res.figure, tol), signature(fig, tol), tol))
        checks.append(_check(f"excise#{i}", ok, area_delta=res.area_delta))
    for i in range(count):
        rng = _rng(seed, 6, 1, i)
        for attempt in range(200):
            sig = class_signature(str(rng.choice([*LENS_OMEGAS, "three_radius"])), rng,
                                  float(rng.uniform(0.0, 1.0)) if attempt % 2 else 0.0)
            fig = generate(sig, int(rng.integers(1 << 30)))
            cps = corner_pairs(fig, tol)
            if len(cps) >= 2:
                break
        k1, k2 = rng.choice(len(cps), 2, replace=False)
        try:
            res = hinge_shift(fig, (cps[int(k1)], cps[int(k2)]), tol)
            partial = False
        except FoldOver as exc:
            res = hinge_shift(fig, (cps[int(k1)], cps[int(k2)]), tol, theta=exc.max_theta)
            partial = True
        ok = (res.area_delta <= tol.eps_area * area(fig, tol) and validate(res.figure, tol).ok
              and _buckets_equal(signature(res.figure, tol), signature(fig, tol), tol))
        checks.append(_check(f"hinge#{i}", ok, area_delta=res.area_delta, partial=partial,
                             theta=res.certificate["theta"]))
    return SuiteResult(6, "surgeries", tuple(checks), time.perf_counter() - t0)


# --- criterion 7: ovals ---------------------------------------------------------------

def random_step_profile(rng: np.random.Generator) -> ArcSignature:
    """1 to 4 distinct radii with random sweeps; the corner bucket may be empty."""
    n = int(rng.integers(1, 5))
    while True:
        radii = np.sort(rng.uniform(0.3, 3.0, n))
        if n == 1 or np.min(np.diff(radii)) > 0.02:
            break
    k = n + int(rng.integers(2))
    w = TAU * (0.1 / k + 0.9 * rng.dirichlet(np.ones(k)))
    arcs = tuple((float(r), float(sw)) for r, sw in zip(radii, w[:n]))
    rest = TAU - math.fsum(sw for _, sw in arcs)
    if k > n:
        return ArcSignature(rest, arcs)
    arcs = arcs[:-1] + ((arcs[-1][0], arcs[-1][1] + rest),)
    return ArcSignature(0.0, arcs)


def suite_oval(seed: int = 0, count: int = 50, tol: Tolerance = DEFAULT_TOL) -> SuiteResult:
    t0 = time.perf_counter()
    checks = []
    for i in range(count):
        sig = random_step_profile(_rng(seed, 7, i))
        v = oval_from_profile(sig, tol)
        back = signature(v.chain, tol)
        exact = back.matches(sig, tol) and len(back.arcs) == len(sig.arcs) and back.seg_total == 0.0
        ok = is_oval(v.chain, tol, route="both") and exact
        checks.append(_check(f"profile#{i}", ok, radii=len(sig.arcs), corners=sig.corners))
    # NoOvalExists exactly on the polygon class
    probes = [(ArcSignature(TAU), True), (ArcSignature(TAU - 1e-3, ((1.0, 1e-3),)), False),
              (ArcSignature(0.0, ((1.0, TAU),)), False)]
    for k, (sig, expect) in enumerate(probes):
        try:
            oval_from_profile(sig, tol)
            raised = False
        except NoOvalExists:
            raised = True
        checks.append(_check(f"no_oval#{k}", raised == expect, corners=sig.corners, raised=raised))
    return SuiteResult(7, "oval", tuple(checks), time.perf_counter() - t0)


# --- criterion 8: neighbourhood equivalence -------------------------------------------

def _parallelogram(a: float, b: float, theta: float) -> ConvexChain:
    return polygon([(0, 0), (a, 0), (a + b * math.cos(theta), b * math.sin(theta)),
                    (b * math.cos(theta), b * math.sin(theta))])


def _swap_segments(fig: ConvexChain, i: int, j: int, la: float, tol: Tolerance) -> ConvexChain:
    """Set half-chain segments ``i, j`` (and their partners) to ``la`` and the rest of their sum."""
    els = list(fig.elements)
    n = len(els)
    total = els[i].length + els[j].length
    for k, v in ((i, la), (j, total - la)):
        els[k] = Seg(v)
        els[k + n // 2] = Seg(v)
    return ConvexChain(fig.start, fig.heading, tuple(els))


def equal_boundary_pair(seed: int, i: int, want: bool, tol: Tolerance = DEFAULT_TOL) -> tuple[ConvexChain, ConvexChain]:
    """Two figures with equidecomposable boundaries (same signature and perimeter).

    Equal areas come from the quadratic dependence of area on the split of a
    fixed length between two nonparallel segments: reflecting the split in
    the vertex of that parabola keeps the area.
    """
    rng = _rng(seed, 8, i)
    if i % 3 == 0:
        while True:
            a, b = (float(x) for x in rng.uniform(0.5, 2.0, 2))
            if abs(a - b) > 0.2:
                break
        theta = float(rng.uniform(0.4, math.pi / 2))
        f = _parallelogram(a, b, theta)
        if not want:
            return f, _parallelogram(a, b, theta * float(rng.uniform(0.5, 0.9)))
        # any split strictly between a and b has a larger side product
        a2 = float(rng.uniform(0.2, 0.8)) * abs(a - b) + min(a, b)
        b2 = a + b - a2
        return f, _parallelogram(a2, b2, math.asin(a * b * math.sin(theta) / (a2 * b2)))
    cls = "three_radius" if i % 3 == 2 else str(rng.choice(list(LENS_OMEGAS)))
    for _ in range(200):
        sig = class_signature(cls, rng, float(rng.uniform(1.0, 3.0)))
        f = generate(sig, int(rng.integers(1 << 30)))
        if not want:
            g = generate(sig, int(rng.integers(1 << 30)))
            if not areas_match(f, g, tol):
                return f, g
            continue
        n = len(f.elements)
        segs = [k for k in range(n // 2) if isinstance(f.elements[k], Seg)]
        if len(segs) < 2:
            continue
        si, sj = segs[0], segs[1]
        total = f.elements[si].length + f.elements[sj].length
        xs = np.array([0.25, 0.5, 0.75]) * total
        ys = [area(_swap_segments(f, si, sj, float(x), tol), tol) for x in xs]
        c2, c1, _ = np.polyfit(xs, ys, 2)
        if abs(c2) < 1e-6:
            continue
        x0 = f.elements[si].length
        x1 = -c1 / c2 - x0
        if not 0.05 * total < x1 < 0.95 * total or abs(x1 - x0) < 0.05 * total:
            continue
        g = _swap_segments(f, si, sj, x1, tol)
        if validate(g, tol).ok:
            return f, g
    raise InfeasibleSignature("no equal-area partner found")


def suite_neighbourhood(seed: int = 0, count: int = 50, tol: Tolerance = DEFAULT_TOL) -> SuiteResult:
    t0 = time.perf_counter()
    checks = []
    for i in range(count):
        want = i % 2 == 0
        f, g = equal_boundary_pair(seed, i, want, tol)
        base = equidecomposable(f, g, tol)
        for radius in (0.1, 1.0):
            off = equidecomposable(r_offset(f, radius, tol), r_offset(g, radius, tol), tol)
            checks.append(_check(f"pair#{i} R={radius}", base == off == want, expected=want,
                                 decided=base, decided_offset=off, radius=radius))
    return SuiteResult(8, "neighbourhood_equivalence", tuple(checks), time.perf_counter() - t0)


SUITES: dict[int, Callable[..., SuiteResult]] = {
    1: suite_area,
    2: suite_decision,
    3: suite_polygon_dissections,
    4: suite_offset,
    5: suite_extremality,
    6: suite_surgery,
    7: suite_oval,
    8: suite_neighbourhood,
    9: suite_diameter,
    10: suite_excess,
}

DEFAULT_COUNTS = {1: 1, 2: 100, 3: 1, 4: 100, 5: 200, 6: 100, 7: 50, 8: 50, 9: 200, 10: 200}


def run(criterion: int, seed: int = 0, count: int | None = None, samples: int = 100_000,
        tol: Tolerance = DEFAULT_TOL) -> SuiteResult:
    fn = SUITES[criterion]
    n = DEFAULT_COUNTS[criterion] if count is None else count
    if criterion in (2, 3):
        return fn(seed, n, samples, tol)
    return fn(seed, n, tol)


__all__ = [
    "SuiteResult", "ExtremalityCase", "SUITES", "DEFAULT_COUNTS", "run", "extremality_cases", "decision_pair",
    "equal_boundary_pair", "random_step_profile", "three_radius_signature", "lens_signature",
    "class_signature", "generate",
]
