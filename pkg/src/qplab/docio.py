"""JSON drawing documents.

::

    {"version": 1,
     "vertices": [{"id": 1, "x": "0", "y": "3/7"}, ...],
     "edges": [{"u": 1, "v": 2}, {"u": 2, "v": 3, "polyline": [["0", "0"], ...]}]}

Coordinates are decimal or ``p/q`` strings and stay exact.  An edge without
``polyline`` is a straight segment; a polyline lists every waypoint including
both endpoints.
"""
from __future__ import annotations

import json
from pathlib import Path

from .drawing import Drawing, Edge, Vertex
from .errors import DocumentError, InvalidCurve
from .geometry import Point, PolylineCurve, format_rational, to_rational

VERSION = 1


def _int_field(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise DocumentError(f"{where}.{key}: missing")
    val = obj[key]
    if isinstance(val, bool) or not isinstance(val, int):
        raise DocumentError(f"{where}.{key}: expected an integer, got {val!r}")
    return val


def _coord(val, where):
    if isinstance(val, bool) or not isinstance(val, (str, int)):
        raise DocumentError(f"{where}: expected a decimal or p/q string, got {val!r}")
    try:
        return to_rational(val)
    except (ValueError, ZeroDivisionError, TypeError):
        raise DocumentError(f"{where}: invalid rational {val!r}") from None


def parse_document(doc) -> Drawing:
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DocumentError("document: expected a JSON object")
    version = _int_field(doc, "version", "document")
    if version != VERSION:
        raise DocumentError(f"document.version: unsupported version {version}")
    for key in ("vertices", "edges"):
        if not isinstance(doc.get(key), list):
            raise DocumentError(f"document.{key}: expected a list")
    verts = []
    for i, v in enumerate(doc["vertices"]):
        where = f"vertices[{i}]"
        vid = _int_field(v, "id", where)
        for key in ("x", "y"):
            if key not in v:
                raise DocumentError(f"{where}.{key}: missing")
        verts.append(Vertex(vid, Point(_coord(v["x"], f"{where}.x"), _coord(v["y"], f"{where}.y"))))
    pos = {v.id: v.point for v in verts}
    edges = []
    for i, e in enumerate(doc["edges"]):
        where = f"edges[{i}]"
        u, v = _int_field(e, "u", where), _int_field(e, "v", where)
        if "polyline" in e and e["polyline"] is not None:
            raw = e["polyline"]
            if not isinstance(raw, list):
                raise DocumentError(f"{where}.polyline: expected a list of [x, y] pairs")
            pts = []
            for j, p in enumerate(raw):
                if not isinstance(p, list) or len(p) != 2:
                    raise DocumentError(f"{where}.polyline[{j}]: expected [x, y]")
                pts.append(Point(_coord(p[0], f"{where}.polyline[{j}][0]"),
                                 _coord(p[1], f"{where}.polyline[{j}][1]")))
            try:
                curve = PolylineCurve(tuple(pts))
            except InvalidCurve:
                curve = None
            edges.append(Edge(u, v, curve, True))
        else:
            curve = None
            if u in pos and v in pos and pos[u] != pos[v]:
                curve = PolylineCurve((pos[u], pos[v]))
            edges.append(Edge(u, v, curve, False))
    return Drawing(tuple(verts), tuple(edges))


def to_document(d: Drawing) -> dict:
    out_edges = []
    for e in d.edges:
        item = {"u": e.u, "v": e.v}
        if e.explicit and e.curve is not None:
            item["polyline"] = [[format_rational(p.x), format_rational(p.y)] for p in e.curve.waypoints]
        out_edges.append(item)
    return {
        "version": VERSION,
        "vertices": [{"id": v.id, "x": format_rational(v.point.x), "y": format_rational(v.point.y)}
                     for v in d.vertices],
        "edges": out_edges,
    }


def dumps_document(d: Drawing) -> str:
    return json.dumps(to_document(d), sort_keys=True, indent=2)


def load_drawing(path) -> Drawing:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from None
    return parse_document(text)


def save_drawing(d: Drawing, path) -> None:
    Path(path).write_text(dumps_document(d) + "\n")
