"""JSON documents: graphs, assignments and realizations with exact rationals.

Rationals are written as ``"p/q"`` or integer strings. On input plain JSON
numbers and decimal strings are accepted and normalized. Vertices are
1-based throughout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .errors import DomainError
from .graph import COLORS, Loop, LoopedGraph, require_valid

FIELDS = ("directions", "sliders", "points", "collapsed", "faithful", "unique", "solvable", "normalization")


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise DomainError(f"not a number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not an exact rational: {value!r}") from exc
    raise DomainError(f"not a number: {value!r}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _pair(item, what):
    if not isinstance(item, (list, tuple)) or len(item) != 2:
        raise DomainError(f"{what} must be a pair, got {item!r}")
    return (parse_rational(item[0]), parse_rational(item[1]))


@dataclass(frozen=True)
class Slider:
    offset: Fraction
    normal: Optional[tuple] = None  # None: take it from the loop color


@dataclass(frozen=True)
class Document:
    graph: LoopedGraph
    directions: Optional[tuple] = None
    sliders: Optional[tuple] = None
    points: Optional[tuple] = None
    collapsed: Optional[tuple] = None  # edge pairs
    faithful: Optional[bool] = None
    unique: Optional[bool] = None
    solvable: Optional[bool] = None
    normalization: Optional[str] = None

    def updated(self, **kw) -> "Document":
        return replace(self, **kw)


def graph_to_json(g: LoopedGraph) -> dict:
    loops = []
    for l in g.loops:
        loops.append({"v": l.v} if l.color is None else {"v": l.v, "color": l.color})
    return {"n": g.n, "edges": [list(e) for e in g.edges], "loops": loops}


def graph_from_json(obj) -> LoopedGraph:
    if not isinstance(obj, dict) or "n" not in obj:
        raise DomainError("graph must be an object with 'n'")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError("graph 'n' must be an integer")
    edges = []
    for e in obj.get("edges", []):
        if not isinstance(e, (list, tuple)) or len(e) != 2 or not all(isinstance(v, int) for v in e):
            raise DomainError(f"edge must be a pair of vertex indices, got {e!r}")
        edges.append(tuple(e))
    loops = []
    for l in obj.get("loops", []):
        if isinstance(l, int):
            loops.append(Loop(l))
        elif isinstance(l, dict) and isinstance(l.get("v"), int):
            color = l.get("color")
            if color is not None and color not in COLORS:
                raise DomainError(f"loop color must be red or blue, got {color!r}")
            loops.append(Loop(l["v"], color))
        else:
            raise DomainError(f"loop must be a vertex index or {{'v': ..}}, got {l!r}")
    return require_valid(LoopedGraph(n, tuple(edges), tuple(loops)))


def document_from_json(obj) -> Document:
    if not isinstance(obj, dict) or "graph" not in obj:
        raise DomainError("document must be an object with a 'graph'")
    g = graph_from_json(obj["graph"])
    kw = {}
    if obj.get("directions") is not None:
        dirs = tuple(_pair(d, "direction") for d in obj["directions"])
        if len(dirs) != g.m:
            raise DomainError(f"{len(dirs)} directions for {g.m} edges")
        kw["directions"] = dirs
    if obj.get("sliders") is not None:
        sliders = []
        for s in obj["sliders"]:
            if not isinstance(s, dict) or "offset" not in s:
                raise DomainError(f"slider must be an object with 'offset', got {s!r}")
            normal = _pair(s["normal"], "normal") if s.get("normal") is not None else None
            sliders.append(Slider(parse_rational(s["offset"]), normal))
        if len(sliders) != g.c:
            raise DomainError(f"{len(sliders)} sliders for {g.c} loops")
        kw["sliders"] = tuple(sliders)
    if obj.get("points") is not None:
        pts = tuple(_pair(p, "point") for p in obj["points"])
        if len(pts) != g.n:
            raise DomainError(f"{len(pts)} points for {g.n} vertices")
        kw["points"] = pts
    if obj.get("collapsed") is not None:
        kw["collapsed"] = tuple(tuple(e) for e in obj["collapsed"])
    for key in ("faithful", "unique", "solvable"):
        if obj.get(key) is not None:
            kw[key] = bool(obj[key])
    if obj.get("normalization") is not None:
        kw["normalization"] = str(obj["normalization"])
    return Document(g, **kw)


def document_to_json(doc: Document) -> dict:
    out = {"graph": graph_to_json(doc.graph)}
    if doc.directions is not None:
        out["directions"] = [[format_rational(a), format_rational(b)] for a, b in doc.directions]
    if doc.sliders is not None:
        sl = []
        for s in doc.sliders:
            item = {"offset": format_rational(s.offset)}
            if s.normal is not None:
                item = {"normal": [format_rational(x) for x in s.normal], **item}
            sl.append(item)
        out["sliders"] = sl
    if doc.points is not None:
        out["points"] = [[format_rational(x), format_rational(y)] for x, y in doc.points]
    if doc.collapsed is not None:
        out["collapsed"] = [list(e) for e in doc.collapsed]
    for key in ("faithful", "unique", "solvable", "normalization"):
        if getattr(doc, key) is not None:
            out[key] = getattr(doc, key)
    return out


def loads(text: str) -> Document:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed JSON: {exc}") from exc
    return document_from_json(obj)


def dumps(doc: Document) -> str:
    return json.dumps(document_to_json(doc), indent=2) + "\n"


def load(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
