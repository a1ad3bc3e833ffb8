"""Scissors congruence for convex figures bounded by circular arcs and segments."""

from __future__ import annotations

from .dissect import Dissection, VerificationReport, dissect, verify
from .figure import (
    Arc,
    ArcSignature,
    ConvexChain,
    Corner,
    Seg,
    area,
    circle,
    congruent,
    diameter,
    equidecomposable,
    lens,
    polygon,
    rectangle,
    signature,
    square,
    stadium,
    validate,
)
from .kernel import Isometry, Tolerance
from .oval import Oval, inner_polygon, is_oval, oval_from_profile, r_offset, uniquely_composed

__version__ = "0.1.0"

__all__ = [
    "Arc", "ArcSignature", "ConvexChain", "Corner", "Dissection", "Isometry", "Oval", "Seg", "Tolerance",
    "VerificationReport", "area", "circle", "congruent", "diameter", "dissect", "equidecomposable",
    "inner_polygon", "is_oval", "lens", "oval_from_profile", "polygon", "r_offset", "rectangle",
    "signature", "square", "stadium", "uniquely_composed", "validate", "verify",
]
