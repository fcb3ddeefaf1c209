"""JSON instance files and report helpers.

Instance document::

    {
      "label": "optional text",
      "points": ["a", "b", "c"],
      "metric": {"matrix": [0, 1, 2, 1, 0, 1, 2, 1, 0]},
          # or {"embedding": {"coords": [[0], [1], [2]], "norm": "euclidean"}}
      "order": {"kind": "partial", "pairs": [["a", "b"], ["b", "c"]]},
      "map": {"a": "a", "b": "a", "c": "b"}
    }

Pairs read "first <= second". Structural problems raise :class:`ParseError`;
documents that parse but break an axiom raise a :class:`ValidationError`.
Infinite chain distances are written as the string ``"inf"``.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import ParseError, ValidationError
from .lab import Instance
from .space import DEFAULT_TOL, OrderedMetricSpace, SelfMap, close_order, metric_from_embedding, validate_metric


class UnknownPoint(ValidationError):
    def __init__(self, name, where):
        self.name, self.where = name, where
        super().__init__(f"unknown point {name!r} in {where}")


class DuplicateName(ValidationError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"point name {name!r} appears more than once")


class MapNotTotal(ValidationError):
    def __init__(self, missing):
        self.missing = missing
        super().__init__(f"map has no image for {missing!r}")


def _require(doc, key, typ, where):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"missing member {key!r} in {where}")
    val = doc[key]
    if not isinstance(val, typ):
        raise ParseError(f"member {key!r} in {where} has the wrong type")
    return val


def _real(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"non-numeric entry {v!r} in {where}")
    return float(v)


def parse_instance(doc: dict, tol: float = DEFAULT_TOL) -> Instance:
    """Build an :class:`Instance` from a decoded instance document.

    A report document is accepted too; its embedded ``instance`` is used.
    """
    if isinstance(doc, dict) and "instance" in doc and "points" not in doc:
        doc = doc["instance"]
    if not isinstance(doc, dict):
        raise ParseError("instance document must be a JSON object")
    points = _require(doc, "points", list, "document")
    if not all(isinstance(p, str) for p in points):
        raise ParseError("points must be strings")
    if not points:
        raise ParseError("points must not be empty")
    index = {}
    for i, p in enumerate(points):
        if p in index:
            raise DuplicateName(p)
        index[p] = i
    n = len(points)

    metric_doc = _require(doc, "metric", dict, "document")
    if "matrix" in metric_doc:
        flat = metric_doc["matrix"]
        if not isinstance(flat, list):
            raise ParseError("metric.matrix must be a list")
        if flat and isinstance(flat[0], list):
            flat = [v for row in flat for v in (row if isinstance(row, list) else [row])]
        vals = [_real(v, "metric.matrix") for v in flat]
        if len(vals) != n * n:
            raise ParseError(f"metric.matrix has {len(vals)} entries, expected {n * n}")
        metric = validate_metric(np.array(vals).reshape(n, n), tol)
    elif "embedding" in metric_doc:
        emb = metric_doc["embedding"]
        coords = _require(emb, "coords", list, "metric.embedding")
        norm = emb.get("norm", "euclidean") if isinstance(emb, dict) else "euclidean"
        if norm not in ("euclidean", "manhattan", "chebyshev"):
            raise ParseError(f"unknown norm {norm!r}")
        rows = []
        for r in coords:
            if not isinstance(r, list):
                r = [r]
            rows.append([_real(v, "metric.embedding.coords") for v in r])
        if len(rows) != n or len({len(r) for r in rows}) != 1:
            raise ParseError("embedding needs one coordinate vector of common length per point")
        metric = metric_from_embedding(np.array(rows), norm, tol)
    else:
        raise ParseError("metric must contain 'matrix' or 'embedding'")

    order_doc = _require(doc, "order", dict, "document")
    kind = order_doc.get("kind", "partial")
    if kind not in ("partial", "quasi"):
        raise ParseError(f"unknown order kind {kind!r}")
    raw_pairs = order_doc.get("pairs", [])
    if not isinstance(raw_pairs, list):
        raise ParseError("order.pairs must be a list")
    pairs = []
    for pr in raw_pairs:
        if not (isinstance(pr, list) and len(pr) == 2 and all(isinstance(s, str) for s in pr)):
            raise ParseError(f"order pair {pr!r} must be a [name, name] list")
        for s in pr:
            if s not in index:
                raise UnknownPoint(s, "order.pairs")
        pairs.append((index[pr[0]], index[pr[1]]))
    order = close_order(pairs, n, kind)

    map_doc = _require(doc, "map", dict, "document")
    img = []
    for k in map_doc:
        if k not in index:
            raise UnknownPoint(k, "map")
    for p in points:
        if p not in map_doc:
            raise MapNotTotal(p)
        v = map_doc[p]
        if not isinstance(v, str):
            raise ParseError(f"map image of {p!r} must be a point name")
        if v not in index:
            raise UnknownPoint(v, "map")
        img.append(index[v])

    label = doc.get("label", "")
    seed = doc.get("seed")
    space = OrderedMetricSpace(metric, order, tuple(points))
    return Instance(space, SelfMap(img), str(label) if label is not None else "", seed)


def load_instance(path, tol: float = DEFAULT_TOL) -> Instance:
    text = Path(path).read_text()  # OSError propagates: an I/O failure, not a parse failure
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc.msg} at line {exc.lineno}") from exc
    return parse_instance(doc, tol)


def names_of(space: OrderedMetricSpace) -> tuple[str, ...]:
    return space.names if space.names is not None else tuple(f"p{i}" for i in range(space.size))


def instance_to_dict(inst: Instance) -> dict:
    sp = inst.space
    names = names_of(sp)
    doc = {}
    if inst.label:
        doc["label"] = inst.label
    doc["points"] = list(names)
    doc["metric"] = {"matrix": [float(v) for v in sp.dist.ravel()]}
    doc["order"] = {"kind": sp.order.kind.value, "pairs": [[names[i], names[j]] for i, j in sp.order.pairs()]}
    doc["map"] = {names[i]: names[inst.map(i)] for i in range(sp.size)}
    if inst.seed is not None:
        doc["seed"] = int(inst.seed)
    return doc


def encode_matrix(M) -> list:
    """Nested lists with ``"inf"`` for infinite entries."""
    return [["inf" if math.isinf(v) else float(v) for v in row] for row in np.asarray(M).tolist()]


def decode_matrix(rows) -> np.ndarray:
    return np.array([[math.inf if v == "inf" else float(v) for v in row] for row in rows], dtype=float)


def jsonable(obj):
    """Replace non-finite floats by strings so the output is strict JSON."""
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        return obj
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return jsonable(obj.item())
    return obj


def dumps(doc) -> str:
    return json.dumps(jsonable(doc), indent=2, allow_nan=False) + "\n"
