"""JSON documents in and out.

Rationals travel as strings (``"p/q"`` or integers) so nothing is lost to
floating point.  Parse errors name the offending path, e.g. ``points[2][1]``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import fields, is_dataclass
from fractions import Fraction
from typing import Any

from .geometry import ConicForm, P1Point, PointedConic, ProjPoint, as_fraction
from .moduli import Branch, FCurvePartition, MarkedTree, NodalImage, NonSingularImage
from .weights import Linearization


class DocumentError(ValueError):
    pass


def _rational(value, where: str) -> Fraction:
    if isinstance(value, float):
        raise DocumentError(f"{where}: floats are not accepted, write {value!r} as a string 'p/q'")
    try:
        return as_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"{where}: malformed rational {value!r} ({exc})") from None


def _list(doc, key: str, where: str) -> list:
    value = doc.get(key) if isinstance(doc, dict) else None
    if not isinstance(value, list):
        raise DocumentError(f"{where}{key}: expected a list")
    return value


def parse_linearization(doc: Any, where: str = "linearization") -> Linearization:
    if not isinstance(doc, dict):
        raise DocumentError(f"{where}: expected an object with gamma and c")
    if "gamma" not in doc:
        raise DocumentError(f"{where}.gamma: missing")
    gamma = _rational(doc["gamma"], f"{where}.gamma")
    c = [_rational(v, f"{where}.c[{i}]") for i, v in enumerate(_list(doc, "c", f"{where}."))]
    try:
        return Linearization(gamma, c)
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def parse_config(doc: dict) -> PointedConic:
    coeffs = _list(doc, "conic", "")
    if len(coeffs) != 6:
        raise DocumentError("conic: expected 6 coefficients (x^2, xy, xz, y^2, yz, z^2)")
    form = ConicForm(*[_rational(v, f"conic[{i}]") for i, v in enumerate(coeffs)])
    pts = []
    for k, p in enumerate(_list(doc, "points", "")):
        if not isinstance(p, list) or len(p) != 3:
            raise DocumentError(f"points[{k}]: expected 3 coordinates")
        coords = [_rational(v, f"points[{k}][{j}]") for j, v in enumerate(p)]
        try:
            pts.append(ProjPoint(*coords))
        except ValueError as exc:
            raise DocumentError(f"points[{k}]: {exc}") from None
    try:
        return PointedConic(form, pts)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def parse_tree(doc: Any) -> MarkedTree:
    if not isinstance(doc, dict):
        raise DocumentError("tree: expected an object with components and edges")
    comps = []
    for k, comp in enumerate(_list(doc, "components", "tree.")):
        clusters = comp.get("clusters") if isinstance(comp, dict) else None
        if not isinstance(clusters, list):
            raise DocumentError(f"tree.components[{k}].clusters: expected a list")
        for j, cl in enumerate(clusters):
            if not isinstance(cl, list) or not all(isinstance(i, int) for i in cl):
                raise DocumentError(f"tree.components[{k}].clusters[{j}]: expected a list of mark indices")
        comps.append(tuple(frozenset(cl) for cl in clusters))
    edges = doc.get("edges", [])
    for j, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 2:
            raise DocumentError(f"tree.edges[{j}]: expected a pair of component indices")
    try:
        return MarkedTree(tuple(comps), tuple(tuple(e) for e in edges))
    except ValueError as exc:
        raise DocumentError(f"tree: {exc}") from None


def parse_partition(doc: Any) -> FCurvePartition:
    if not isinstance(doc, list):
        raise DocumentError("partition: expected four lists of marks")
    try:
        return FCurvePartition(doc)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"partition: {exc}") from None


def parse_matrix(doc: Any, where: str) -> tuple:
    if not isinstance(doc, list) or len(doc) != 3 or any(not isinstance(r, list) or len(r) != 3 for r in doc):
        raise DocumentError(f"{where}: expected a 3x3 matrix")
    return tuple(tuple(_rational(v, f"{where}[{i}][{j}]") for j, v in enumerate(r)) for i, r in enumerate(doc))


# ---------------------------------------------------------------------------

def to_jsonable(obj: Any) -> Any:
    """Recursively convert library values to JSON-ready data."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, ProjPoint):
        return [str(v) for v in obj.coords]
    if isinstance(obj, P1Point):
        return "inf" if obj.value is None else str(obj.value)
    if isinstance(obj, ConicForm):
        return [str(v) for v in obj.coefficients]
    if isinstance(obj, frozenset):
        return sorted(obj)
    if isinstance(obj, MarkedTree):
        return {
            "components": [{"clusters": [sorted(cl) for cl in comp]} for comp in obj.components],
            "edges": [list(e) for e in obj.edges],
        }
    if isinstance(obj, NonSingularImage):
        return {"type": "NonSingular", "clusters": [sorted(cl) for cl in obj.clusters]}
    if isinstance(obj, NodalImage):
        return {
            "type": "Nodal",
            "left": [sorted(cl) for cl in obj.left.clusters],
            "right": [sorted(cl) for cl in obj.right.clusters],
            "node": sorted(obj.node),
        }
    if isinstance(obj, Branch):
        return [sorted(cl) for cl in obj.clusters]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2)
