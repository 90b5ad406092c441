"""Static SVG drawings in a fixed unit viewBox."""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET

from .majorization import PLCurve
from .qubit import ConeDescriptor, QubitState

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def _root() -> ET.Element:
    return ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "viewBox": "0 0 1 1",
        "width": "400",
        "height": "400",
    })


def _num(v: float) -> str:
    return f"{v:.6f}"


def _frame(root: ET.Element) -> None:
    ET.SubElement(root, "rect", {"x": "0", "y": "0", "width": "1", "height": "1",
                                 "fill": "white", "stroke": "#999", "stroke-width": "0.004"})


def _serialize(root: ET.Element) -> str:
    return ET.tostring(root, encoding="unicode") + "\n"


def curves_svg(curves: dict[str, PLCurve]) -> str:
    """Curves on ``[0,1]^2``; y grows upward."""
    root = _root()
    _frame(root)
    for k, (name, curve) in enumerate(curves.items()):
        pts = " ".join(f"{_num(float(x))},{_num(1 - float(y))}" for x, y in curve.points)
        ET.SubElement(root, "polyline", {
            "points": pts, "fill": "none", "stroke": PALETTE[k % len(PALETTE)],
            "stroke-width": "0.006", "data-label": name,
        })
    return _serialize(root)


def _to_view(x: float, z: float) -> tuple[float, float]:
    # Bloch xz-disk [-1,1]^2 to the unit box, z upward
    return (x + 1) / 2, (1 - z) / 2


def _clip_circle(root, idx, c: float, R: float):
    """Circle of radius ``R`` around ``(0, c)`` intersected with the Bloch disk."""
    cx, cy = _to_view(0.0, c)
    ET.SubElement(root, "circle", {
        "cx": _num(cx), "cy": _num(cy), "r": _num(R / 2),
        "fill": "none", "stroke": PALETTE[idx % len(PALETTE)], "stroke-width": "0.005",
        "clip-path": "url(#bloch)",
    })


def bloch_svg(states: dict[str, QubitState], cones: dict[str, ConeDescriptor] | None = None,
              markers: dict[str, QubitState] | None = None, zeta: float | None = None) -> str:
    """Bloch xz cross-section with cone boundaries and labelled points."""
    root = _root()
    defs = ET.SubElement(root, "defs")
    clip = ET.SubElement(defs, "clipPath", {"id": "bloch"})
    ET.SubElement(clip, "circle", {"cx": "0.5", "cy": "0.5", "r": "0.5"})
    ET.SubElement(root, "circle", {"cx": "0.5", "cy": "0.5", "r": "0.5", "fill": "#f4f4f4",
                                   "stroke": "black", "stroke-width": "0.004"})
    ET.SubElement(root, "line", {"x1": "0.5", "y1": "0", "x2": "0.5", "y2": "1",
                                 "stroke": "#bbb", "stroke-width": "0.002"})
    for k, cone in enumerate((cones or {}).values()):
        _clip_circle(root, k, cone.c1, cone.R1)
        _clip_circle(root, k, cone.c2, cone.R2)
    if zeta is not None:
        gx, gy = _to_view(0.0, zeta)
        ET.SubElement(root, "circle", {"cx": _num(gx), "cy": _num(gy), "r": "0.012",
                                       "fill": "black", "data-label": "gibbs"})
    for kind, group in (("state", states), ("marker", markers or {})):
        for name, s in group.items():
            x, y = _to_view(math.copysign(s.transverse, s.x or 1.0), s.z)
            attrs = {"cx": _num(x), "cy": _num(y), "r": "0.012", "data-label": name}
            attrs["fill"] = "#333" if kind == "state" else "none"
            attrs["stroke"] = "#333"
            attrs["stroke-width"] = "0.004"
            ET.SubElement(root, "circle", attrs)
            label = ET.SubElement(root, "text", {"x": _num(x + 0.02), "y": _num(y - 0.02),
                                                 "font-size": "0.04"})
            label.text = name
    return _serialize(root)
