"""
JSON file formats and the SVG figure emitter.

Every document is an object with a ``kind`` tag, one of ``tolerance``,
``multitolerance``, ``shadow``, ``s3sc`` and ``solution``. Rationals are
written as ``"numerator/denominator"`` strings in lowest terms (``"3/1"``
for integers). Parsing also accepts plain integers and ``"7"``-style strings.
Output is ``json.dumps(..., sort_keys=True, indent=2)`` plus a newline, so
equal objects always serialize to identical bytes.

Solution files carry a witness map: for a dominating set, every vertex
points at a chosen vertex dominating it (itself when chosen); for a cover,
every element points at a chosen set index containing it. ``verify`` can
check a solution from this map and the instance alone.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .geometry import Point, Segment, as_rational
from .hardness import S3SCInstance
from .model import (
    MultitoleranceRepresentation,
    MultitoleranceVertex,
    ShadowRepresentation,
    ToleranceRepresentation,
    ToleranceVertex,
    ValidationError,
    neighbor_sets,
)
from .solution import DomSolution

__all__ = [
    "FormatError",
    "SolutionFile",
    "encode_rational",
    "decode_rational",
    "to_document",
    "from_document",
    "dumps",
    "loads",
    "read_file",
    "write_file",
    "domination_witness",
    "check_domination_witness",
    "cover_witness",
    "solution_file",
    "render_svg",
    "svg_document",
]

KINDS = ("tolerance", "multitolerance", "shadow", "s3sc", "solution")


class FormatError(ValueError):
    """A document does not follow the expected schema."""


def encode_rational(v) -> str:
    v = as_rational(v)
    return f"{v.numerator}/{v.denominator}"


def decode_rational(raw) -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise FormatError(f"expected a rational string or integer, got {raw!r}")
    try:
        return as_rational(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {raw!r}: {exc}") from None


@dataclass(frozen=True)
class SolutionFile:
    """Serialized solver output.

    ``chosen`` is a sorted tuple of vertex ids (or set indices for covers)
    and ``None`` for an infeasible result.
    """

    problem: str
    chosen: tuple | None
    witness: dict = field(default_factory=dict)
    reason: str | None = None
    notes: tuple = ()
    params: dict = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.chosen is not None

    @property
    def size(self) -> int | None:
        return None if self.chosen is None else len(self.chosen)


# --- documents ---------------------------------------------------------------


def _point_doc(p: Point) -> dict:
    return {"x": encode_rational(p.x), "y": encode_rational(p.y)}


def _point_of(doc) -> Point:
    _require(doc, ("x", "y"), "point")
    return Point(decode_rational(doc["x"]), decode_rational(doc["y"]))


def _require(doc, keys, what):
    if not isinstance(doc, dict):
        raise FormatError(f"{what} must be an object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise FormatError(f"{what} lacks {', '.join(missing)}")


def to_document(obj) -> dict:
    if isinstance(obj, ToleranceRepresentation):
        return {
            "kind": "tolerance",
            "vertices": [
                {"id": v.id, "l": encode_rational(v.l), "r": encode_rational(v.r), "t": encode_rational(v.t)}
                for v in obj.vertices
            ],
        }
    if isinstance(obj, MultitoleranceRepresentation):
        out = []
        for v in obj.vertices:
            item = {"id": v.id, "l": encode_rational(v.l), "r": encode_rational(v.r)}
            if v.bounded:
                item["lt"] = encode_rational(v.lt)
                item["rt"] = encode_rational(v.rt)
            out.append(item)
        return {"kind": "multitolerance", "vertices": out}
    if isinstance(obj, ShadowRepresentation):
        doc = {
            "kind": "shadow",
            "points": [dict(id=pid, **_point_doc(p)) for pid, p in obj.points],
            "segments": [{"id": sid, "l": _point_doc(s.p1), "r": _point_doc(s.p2)} for sid, s in obj.segments],
        }
        if obj.delta is not None:
            doc["delta"] = encode_rational(obj.delta)
        return doc
    if isinstance(obj, S3SCInstance):
        return {
            "kind": "s3sc",
            "n": obj.n,
            "m": obj.m,
            "sets": [list(s) for s in obj.sets],
            "gadgets": [list(g) for g in obj.gadgets],
        }
    if isinstance(obj, SolutionFile):
        return {
            "kind": "solution",
            "problem": obj.problem,
            "feasible": obj.feasible,
            "chosen": None if obj.chosen is None else list(obj.chosen),
            "size": obj.size,
            "witness": dict(obj.witness),
            "reason": obj.reason,
            "notes": list(obj.notes),
            "params": dict(obj.params),
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_document(doc):
    if not isinstance(doc, dict) or "kind" not in doc:
        raise FormatError("document must be an object with a 'kind' field")
    kind = doc["kind"]
    try:
        if kind == "tolerance":
            _require(doc, ("vertices",), "tolerance document")
            verts = []
            for v in doc["vertices"]:
                _require(v, ("id", "l", "r", "t"), "tolerance vertex")
                verts.append(ToleranceVertex(str(v["id"]), decode_rational(v["l"]), decode_rational(v["r"]), decode_rational(v["t"])))
            return ToleranceRepresentation(tuple(verts))
        if kind == "multitolerance":
            _require(doc, ("vertices",), "multitolerance document")
            verts = []
            for v in doc["vertices"]:
                _require(v, ("id", "l", "r"), "multitolerance vertex")
                lt = v.get("lt")
                rt = v.get("rt")
                verts.append(MultitoleranceVertex(
                    str(v["id"]), decode_rational(v["l"]), decode_rational(v["r"]),
                    None if lt is None else decode_rational(lt),
                    None if rt is None else decode_rational(rt),
                ))
            return MultitoleranceRepresentation(tuple(verts))
        if kind == "shadow":
            _require(doc, ("points", "segments"), "shadow document")
            points = []
            for p in doc["points"]:
                _require(p, ("id",), "point")
                points.append((str(p["id"]), _point_of(p)))
            segments = []
            for s in doc["segments"]:
                _require(s, ("id", "l", "r"), "segment")
                segments.append((str(s["id"]), Segment(_point_of(s["l"]), _point_of(s["r"]))))
            delta = doc.get("delta")
            return ShadowRepresentation(tuple(points), tuple(segments), None if delta is None else decode_rational(delta))
        if kind == "s3sc":
            _require(doc, ("n", "m", "sets", "gadgets"), "s3sc document")
            return S3SCInstance(
                int(doc["n"]), int(doc["m"]),
                tuple(tuple(str(e) for e in s) for s in doc["sets"]),
                tuple(tuple(int(x) for x in g) for g in doc["gadgets"]),
            )
        if kind == "solution":
            _require(doc, ("problem", "chosen"), "solution document")
            chosen = doc["chosen"]
            return SolutionFile(
                problem=str(doc["problem"]),
                chosen=None if chosen is None else tuple(chosen),
                witness=dict(doc.get("witness") or {}),
                reason=doc.get("reason"),
                notes=tuple(doc.get("notes") or ()),
                params=dict(doc.get("params") or {}),
            )
    except (TypeError, ValidationError) as exc:
        raise FormatError(str(exc)) from None
    raise FormatError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")


def dumps(obj) -> str:
    return json.dumps(to_document(obj), sort_keys=True, indent=2) + "\n"


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    return from_document(doc)


def read_file(path):
    return loads(Path(path).read_text())


def write_file(obj, path) -> None:
    Path(path).write_text(dumps(obj))


# --- certificates ------------------------------------------------------------


def domination_witness(rep: ShadowRepresentation, D, nb=None) -> dict:
    """Map every vertex to the smallest chosen id dominating it."""
    nb = neighbor_sets(rep) if nb is None else nb
    D = set(D)
    out = {}
    for v in rep.ids:
        if v in D:
            out[v] = v
            continue
        hits = sorted(nb[v] & D)
        if not hits:
            raise ValueError(f"{v} is not dominated")
        out[v] = hits[0]
    return out


def check_domination_witness(rep: ShadowRepresentation, sol: SolutionFile, nb=None) -> list[str]:
    nb = neighbor_sets(rep) if nb is None else nb
    chosen = set(sol.chosen or ())
    problems = [f"unknown chosen id {c}" for c in sorted(chosen) if c not in rep]
    for v in rep.ids:
        w = sol.witness.get(v)
        if w is None:
            problems.append(f"no witness for {v}")
        elif w not in chosen:
            problems.append(f"witness {w} of {v} is not chosen")
        elif w != v and w not in nb[v]:
            problems.append(f"witness {w} is not adjacent to {v}")
    return problems


def cover_witness(inst: S3SCInstance, chosen) -> dict:
    out = {}
    for e in inst.universe:
        hits = [c for c in sorted(chosen) if e in inst.sets[c]]
        if not hits:
            raise ValueError(f"element {e} is not covered")
        out[e] = hits[0]
    return out


def solution_file(problem: str, rep: ShadowRepresentation, sol: DomSolution, params=None) -> SolutionFile:
    if not sol.feasible:
        return SolutionFile(problem, None, {}, sol.reason, tuple(sol.notes), dict(params or {}))
    chosen = tuple(sol.sorted_ids())
    # the restricted problem only dominates its own representation, which is rep
    return SolutionFile(problem, chosen, domination_witness(rep, chosen), None, tuple(sol.notes), dict(params or {}))


# --- SVG -----------------------------------------------------------------------


def svg_document(rep: ShadowRepresentation, *, shadows: bool = False, scale: int = 40, margin: int = 20) -> str:
    """SVG 1.1 picture: one ``line`` per segment, one ``circle`` per point.

    Coordinates are the ordinary ``(x, y)`` plane, y pointing up. With
    ``shadows`` each element also gets a dotted ``path`` outlining the
    boundary of its shadow inside the drawing box.
    """
    pts = [p for _, e in rep.elements() for p in ((e,) if isinstance(e, Point) else (e.p1, e.p2))]
    if pts:
        xmin = min(p.x for p in pts) - 1
        xmax = max(p.x for p in pts) + 1
        ymin = min(p.y for p in pts) - 1
        ymax = max(p.y for p in pts) + 1
    else:
        xmin = ymin = Fraction(0)
        xmax = ymax = Fraction(1)
    width = float((xmax - xmin) * scale) + 2 * margin
    height = float((ymax - ymin) * scale) + 2 * margin

    def X(v):
        return f"{float((v - xmin) * scale) + margin:.3f}"

    def Y(v):
        return f"{float((ymax - v) * scale) + margin:.3f}"

    root = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "version": "1.1",
        "width": f"{width:.0f}",
        "height": f"{height:.0f}",
        "viewBox": f"0 0 {width:.0f} {height:.0f}",
    })
    ET.SubElement(root, "rect", {"x": "0", "y": "0", "width": f"{width:.0f}", "height": f"{height:.0f}", "fill": "white"})
    if shadows:
        group = ET.SubElement(root, "g", {"class": "shadows", "fill": "none", "stroke": "#888", "stroke-dasharray": "3,3"})
        for eid, e in rep.elements():
            l, r = (e, e) if isinstance(e, Point) else (e.p1, e.p2)
            # down the diagonal from l, along the element, then straight down from r
            dl = l.y - l.x
            x_low = max(xmin, ymin - dl)
            d = f"M {X(x_low)} {Y(x_low + dl)} L {X(l.x)} {Y(l.y)} L {X(r.x)} {Y(r.y)} L {X(r.x)} {Y(ymin)}"
            ET.SubElement(group, "path", {"d": d, "data-id": eid})
    for sid, s in rep.segments:
        ET.SubElement(root, "line", {
            "x1": X(s.p1.x), "y1": Y(s.p1.y), "x2": X(s.p2.x), "y2": Y(s.p2.y),
            "stroke": "black", "stroke-width": "2", "data-id": sid,
        })
    for pid, p in rep.points:
        ET.SubElement(root, "circle", {"cx": X(p.x), "cy": Y(p.y), "r": "4", "fill": "black", "data-id": pid})
    for eid, e in rep.elements():
        anchor = e if isinstance(e, Point) else e.p1
        label = ET.SubElement(root, "text", {"x": X(anchor.x), "y": Y(anchor.y), "font-size": "11", "dx": "4", "dy": "-4"})
        label.text = eid
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"


def render_svg(rep: ShadowRepresentation, path, *, shadows: bool = False) -> None:
    Path(path).write_text(svg_document(rep, shadows=shadows))
