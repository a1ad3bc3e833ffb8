"""Acceptance criteria 1-10 at their stated tolerances and runtime budgets.

Each criterion prints one PASS/FAIL line (collected into the pytest
terminal summary, or printed directly when run as a script).
"""

from __future__ import annotations

import json
import math
import sys
import time
from pathlib import Path

import pytest

from circpoly.figure import area, lens
from circpoly.suites import DEFAULT_COUNTS, SuiteResult, run

ORACLE = json.loads((Path(__file__).parent / "oracles" / "values.json").read_text())["values"]["lens_r1_pi"]
LINES: list[str] = []

BRIEF = {
    1: "area engine: circle and lens L_pi, analytic and Monte-Carlo oracle",
    2: "equidecomposability decision on 3 x 100 seeded pairs, dissect+verify on true pairs",
    3: "polygon pipeline: square <-> rectangle, square <-> right triangle",
    4: "offsets of 100 random polygons: area law and inner round trip",
    5: "area extremality of the oval on 4 x 200 centrally symmetric figures",
    6: "parallelogram excision and hinge shift on 100 inputs each",
    7: "oval construction on 50 step profiles; no oval for polygon profiles",
    8: "equidecomposability unchanged by R-neighbourhoods, 50 pairs, R in {0.1, 1}",
    9: "diameter never exceeds the oval's, equality only with congruence",
    10: "positive area excess whenever d_H/h > 0.05",
}


def _line(n: int, ok: bool, res: SuiteResult, note: str = "") -> str:
    budget = f" / {res.budget:g} s" if res.budget else ""
    tail = f"; {note}" if note else ""
    return (f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {BRIEF[n]}  "
            f"[{len(res.checks)} checks, {len(res.failures)} failures, {res.seconds:.2f} s{budget}{tail}]")


def _oracle_check() -> tuple[bool, str]:
    a = area(lens(1.0, math.pi))
    dev = abs(a - ORACLE["area"])
    ok = abs(a - (math.pi / 2 - 1)) <= 1e-9 and dev <= 3 * ORACLE["sigma"]
    return ok, f"lens vs oracle {dev:.2e} <= 3 sigma {3 * ORACLE['sigma']:.2e}"


def _extra(n: int, res: SuiteResult) -> str:
    if n == 2:
        return f"max pieces {max(c.get('pieces', 0) for c in res.checks)}"
    if n in (5, 9):
        eq = sum(1 for c in res.checks if c.get("equality"))
        return f"{eq} equality cases, each needing a congruence witness"
    if n == 10:
        above = sum(1 for c in res.checks if c["dh_over_h"] > 0.05)
        return f"{above} cases above the ratio"
    return ""


def check(n: int) -> tuple[bool, str]:
    t0 = time.perf_counter()
    res = run(n)
    ok = res.passed
    note = _extra(n, res)
    if n == 1:
        o_ok, o_note = _oracle_check()
        ok = ok and o_ok and time.perf_counter() - t0 < 1.0
        note = o_note
    return ok, _line(n, ok, res, note)


@pytest.mark.parametrize("n", sorted(DEFAULT_COUNTS))
def test_criterion(n):
    ok, line = check(n)
    LINES.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [check(n) for n in sorted(DEFAULT_COUNTS)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
