"""Plane primitives shared by every module: points, rigid motions, tolerances."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

TAU = 2.0 * math.pi


class GeometryError(ValueError):
    """Base class for all domain errors raised by the package."""


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Tolerance:
    eps_len: float = 1e-9
    eps_ang: float = 1e-9
    eps_area: float = 1e-9

    def __post_init__(self) -> None:
        for name in ("eps_len", "eps_ang", "eps_area"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_TOL = Tolerance()


def norm_angle(a: float) -> float:
    """Map an angle into [0, 2pi)."""
    a = math.fmod(a, TAU)
    if a < 0:
        a += TAU
    if a >= TAU:
        a = 0.0
    return a


def angle_diff(a: float, b: float) -> float:
    """Signed circular difference a - b in (-pi, pi]."""
    d = norm_angle(a - b)
    return d - TAU if d > math.pi else d


def dist(p, q) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def unit(theta: float) -> Point:
    return Point(math.cos(theta), math.sin(theta))


@dataclass(frozen=True)
class Isometry:
    """Rigid motion ``p -> R(rotation) @ F(p) + translation``.

    ``F`` is the reflection across the x-axis when ``reflect`` is set and the
    identity otherwise, so reflection is applied before rotation.
    """

    rotation: float = 0.0
    translation: tuple[float, float] = (0.0, 0.0)
    reflect: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "rotation", norm_angle(self.rotation))
        tx, ty = self.translation
        object.__setattr__(self, "translation", (float(tx), float(ty)))

    @classmethod
    def identity(cls) -> Isometry:
        return cls()

    @classmethod
    def from_poses(cls, src: tuple, dst: tuple, reflect: bool = False) -> Isometry:
        """Motion sending pose ``src=(point, heading)`` onto ``dst``.

        With ``reflect`` the source pose is mirrored first, so the result maps
        the mirror image of ``src`` onto ``dst``.
        """
        (sp, sh), (dp, dh) = src, dst
        if reflect:
            sp, sh = (sp[0], -sp[1]), -sh
        rot = dh - sh
        c, s = math.cos(rot), math.sin(rot)
        tx = dp[0] - (c * sp[0] - s * sp[1])
        ty = dp[1] - (s * sp[0] + c * sp[1])
        return cls(rot, (tx, ty), reflect)

    def linear(self, v) -> Point:
        x, y = v[0], v[1]
        if self.reflect:
            y = -y
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        return Point(c * x - s * y, s * x + c * y)

    def __call__(self, p) -> Point:
        lx, ly = self.linear(p)
        return Point(lx + self.translation[0], ly + self.translation[1])

    def heading(self, theta: float) -> float:
        """Image of a direction angle."""
        return norm_angle(self.rotation + (-theta if self.reflect else theta))

    def apply_array(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        x, y = pts[..., 0], pts[..., 1]
        if self.reflect:
            y = -y
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        return np.stack(
            [c * x - s * y + self.translation[0], s * x + c * y + self.translation[1]], axis=-1
        )

    def inverse(self) -> Isometry:
        if self.reflect:
            inv = Isometry(self.rotation, (0.0, 0.0), True)
        else:
            inv = Isometry(-self.rotation, (0.0, 0.0), False)
        tx, ty = inv.linear(self.translation)
        return Isometry(inv.rotation, (-tx, -ty), inv.reflect)

    def __matmul__(self, other: Isometry) -> Isometry:
        return compose(self, other)

    def is_identity(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        rot = min(self.rotation, TAU - self.rotation)
        return (
            not self.reflect
            and rot <= tol.eps_ang
            and math.hypot(*self.translation) <= tol.eps_len
        )


def compose(a: Isometry, b: Isometry) -> Isometry:
    """``compose(a, b)(p) == a(b(p))``."""
    rot = a.rotation - b.rotation if a.reflect else a.rotation + b.rotation
    return Isometry(rot, tuple(a(b.translation)), a.reflect != b.reflect)


def apply(m: Isometry, p) -> Point:
    return m(p)


def rotation(theta: float, about=(0.0, 0.0)) -> Isometry:
    c, s = math.cos(theta), math.sin(theta)
    ax, ay = about
    return Isometry(theta, (ax - (c * ax - s * ay), ay - (s * ax + c * ay)))


def translation(dx: float, dy: float) -> Isometry:
    return Isometry(0.0, (dx, dy))


def reflection_x() -> Isometry:
    return Isometry(0.0, (0.0, 0.0), True)
