"""Polygon/guards JSON files and deterministic SVG rendering.

The polygon format is {"vertices": [[x, y], ...]} with an optional "name";
guards files are {"guards": [[x, y], ...]}. Serialization is canonical
(fixed key order, shortest round-trip float repr), so parse followed by
serialize is byte-stable.
"""

from __future__ import annotations

import json
from typing import Sequence

from .coverage import check_guards
from .errors import ParseError, ValidationError
from .geometry import Polygon

SVG_MARGIN = 10.0
_GUARD_SIZE = 5.0


def _load_json(data: bytes | str, what: str) -> dict:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"{what}: not valid UTF-8 ({exc})") from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{what}: expected a JSON object, got {type(doc).__name__}")
    return doc


def _point_list(doc: dict, key: str, what: str, minimum: int) -> list[tuple[float, float]]:
    raw = doc.get(key)
    if not isinstance(raw, list):
        raise ParseError(f"{what}: missing or non-array '{key}' field")
    if len(raw) < minimum:
        raise ParseError(f"{what}: '{key}' needs at least {minimum} entries, got {len(raw)}")
    pts = []
    for i, entry in enumerate(raw):
        if (
            not isinstance(entry, (list, tuple))
            or len(entry) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in entry)
        ):
            raise ParseError(f"{what}: '{key}'[{i}] is not an [x, y] number pair")
        x, y = float(entry[0]), float(entry[1])
        if x != x or y != y or x in (float("inf"), float("-inf")) or y in (float("inf"), float("-inf")):
            raise ParseError(f"{what}: '{key}'[{i}] is not finite")
        pts.append((x, y))
    return pts


def parse_polygon(data: bytes | str) -> Polygon:
    """Validated Polygon from a JSON document; simplicity is enforced."""
    doc = _load_json(data, "polygon file")
    vertices = _point_list(doc, "vertices", "polygon file", 3)
    return Polygon(vertices)  # DegeneratePolygon / InvalidPolygon are ValidationErrors


def serialize_polygon(P: Polygon, name: str | None = None) -> bytes:
    """Canonical JSON bytes; parse(serialize(P)) reproduces P exactly."""
    doc: dict = {}
    if name is not None:
        doc["name"] = name
    doc["vertices"] = [[float(x), float(y)] for x, y in P.vertices]
    return (json.dumps(doc, separators=(",", ":")) + "\n").encode("utf-8")


def parse_guards(data: bytes | str) -> list[tuple[float, float]]:
    doc = _load_json(data, "guards file")
    return _point_list(doc, "guards", "guards file", 1)


def serialize_guards(guards: Sequence[tuple[float, float]]) -> bytes:
    doc = {"guards": [[float(x), float(y)] for x, y in guards]}
    return (json.dumps(doc, separators=(",", ":")) + "\n").encode("utf-8")


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _path_d(vertices) -> str:
    parts = [f"M {_fmt(vertices[0][0])} {_fmt(vertices[0][1])}"]
    parts.extend(f"L {_fmt(x)} {_fmt(y)}" for x, y in vertices[1:])
    parts.append("Z")
    return " ".join(parts)


def render_svg(
    P: Polygon,
    guards: Sequence[tuple[float, float]] = (),
    regions: Sequence[Polygon] | None = None,
) -> bytes:
    """Deterministic SVG: outline, optional shaded regions, diamond guard marks.

    The y axis is flipped so figures read in math orientation (y up).
    """
    if guards:
        check_guards(P, guards)
    xmin, ymin, xmax, ymax = P.bbox
    width = (xmax - xmin) + 2.0 * SVG_MARGIN
    height = (ymax - ymin) + 2.0 * SVG_MARGIN

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_fmt(xmin - SVG_MARGIN)} {_fmt(ymin - SVG_MARGIN)} {_fmt(width)} {_fmt(height)}" '
        f'width="{_fmt(width)}" height="{_fmt(height)}">',
        f'<g transform="translate(0 {_fmt(ymin + ymax)}) scale(1 -1)">',
    ]
    if regions:
        for region in regions:
            lines.append(
                f'<path class="region" d="{_path_d(region.vertices)}" '
                'fill="#76a5d4" fill-opacity="0.55" fill-rule="evenodd" stroke="none"/>'
            )
    lines.append(
        f'<path class="outline" d="{_path_d(P.vertices)}" '
        'fill="none" fill-rule="evenodd" stroke="#000000" stroke-width="1.5"/>'
    )
    for x, y in guards:
        s = _GUARD_SIZE
        lines.append(
            f'<path class="guard" d="M {_fmt(x)} {_fmt(y - s)} L {_fmt(x + s)} {_fmt(y)} '
            f'L {_fmt(x)} {_fmt(y + s)} L {_fmt(x - s)} {_fmt(y)} Z" fill="#000000"/>'
        )
    lines.append("</g>")
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")
