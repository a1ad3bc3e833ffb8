"""Rebuild the frozen Monte-Carlo area oracles in ``values.json``.

Membership is decided from first principles (distances to disks, segments
and squares), independent of the library's region code.  Run from the
repository root: ``python3 tests/oracles/build_oracles.py``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

N = 10_000_000
CHUNK = 1_000_000
SEED = 20240601


def _lens(r: float, omega: float):
    # two disks whose centres sit 2 r cos(omega / 4) apart on the x-axis
    d = 2 * r * math.cos(omega / 4)
    h = r * math.sin(omega / 4) if omega <= math.pi * 2 else r

    def inside(x, y):
        return ((x - d / 2) ** 2 + y ** 2 <= r * r) & ((x + d / 2) ** 2 + y ** 2 <= r * r)

    w = r - d / 2
    return inside, (-w, -max(h, r), w, max(h, r))


def _disk(r: float):
    return (lambda x, y: x * x + y * y <= r * r), (-r, -r, r, r)


def _stadium(r: float, length: float):
    def inside(x, y):
        cx = np.clip(x, 0.0, length)
        return (x - cx) ** 2 + y ** 2 <= r * r

    return inside, (-r, -r, length + r, r)


def _rounded_square(side: float, r: float):
    def inside(x, y):
        dx = np.maximum(np.abs(x) - side / 2, 0.0)
        dy = np.maximum(np.abs(y) - side / 2, 0.0)
        return dx * dx + dy * dy <= r * r

    e = side / 2 + r
    return inside, (-e, -e, e, e)


CASES = {
    "circle_r1": _disk(1.0),
    "lens_r1_pi": _lens(1.0, math.pi),
    "lens_r1_pi_2": _lens(1.0, math.pi / 2),
    "lens_r1_3pi_2": _lens(1.0, 1.5 * math.pi),
    "stadium_r1_l2": _stadium(1.0, 2.0),
    "square2_offset1": _rounded_square(2.0, 1.0),
}


def estimate(inside, box, n: int, rng: np.random.Generator) -> tuple[float, float]:
    x0, y0, x1, y1 = box
    box_area = (x1 - x0) * (y1 - y0)
    hits = 0
    for k in range(0, n, CHUNK):
        m = min(CHUNK, n - k)
        x = rng.uniform(x0, x1, m)
        y = rng.uniform(y0, y1, m)
        hits += int(np.count_nonzero(inside(x, y)))
    p = hits / n
    return box_area * p, box_area * math.sqrt(p * (1 - p) / n)


def main() -> None:
    out = {"samples": N, "seed": SEED, "values": {}}
    for k, (name, (inside, box)) in enumerate(CASES.items()):
        est, sigma = estimate(inside, box, N, np.random.default_rng([SEED, k]))
        out["values"][name] = {"area": est, "sigma": sigma}
        print(f"{name}: {est:.6f} +- {sigma:.2e}")
    Path(__file__).with_name("values.json").write_text(json.dumps(out, indent=2) + "\n")


if __name__ == "__main__":
    main()
