"""JSON-compatible encodings for relations, morphisms and stream objects.

Relations: ``{"minus": [...], "plus": [...], "rel": [[0/1, ...], ...]}`` with an
optional ``"provenance"``.  Morphisms: ``{"source", "target", "minus_map",
"plus_map"}`` where source and target are relation objects or file paths.
Stream objects are ULP dicts ``{"prefix", "period", "increment", "cycle"}``,
wrapped with a ``"kind"`` tag for sets, partitions and chopped reals.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .morphisms import FiniteMorphism
from .relations import FiniteRelation
from .streams import (
    ChoppedReal,
    InfiniteSubset,
    IntervalPartition,
    LazyFunction,
    LazyPartition,
    LazySubset,
    Verdict,
)
from .ulp import UlpFunction

HEAD = 16


class SchemaError(ValueError):
    pass


def _require(data, keys, what):
    if not isinstance(data, dict):
        raise SchemaError(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise SchemaError(f"{what} is missing field(s): {', '.join(missing)}")


def _label(v):
    # ints and strings survive a JSON round trip as themselves; anything else is shown as text
    return v if isinstance(v, (int, str)) and not isinstance(v, bool) else str(v)


def relation_to_json(rel: FiniteRelation) -> dict:
    out = {
        "minus": [_label(x) for x in rel.minus],
        "plus": [_label(z) for z in rel.plus],
        "rel": rel.matrix.astype(int).tolist(),
    }
    if rel.provenance:
        out["provenance"] = rel.provenance
    return out


def relation_from_json(data) -> FiniteRelation:
    _require(data, ("minus", "plus", "rel"), "relation")
    rows = data["rel"]
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise SchemaError("relation field 'rel' must be an array of rows")
    for r in rows:
        for v in r:
            if v not in (0, 1) or isinstance(v, bool):
                raise SchemaError(f"relation entries must be 0 or 1, got {v!r}")
    if len(rows) != len(data["minus"]) or any(len(r) != len(data["plus"]) for r in rows):
        raise SchemaError("relation 'rel' has the wrong shape for its 'minus'/'plus' labels")
    mat = np.array(rows, dtype=bool).reshape(len(data["minus"]), len(data["plus"]))
    return FiniteRelation(tuple(data["minus"]), tuple(data["plus"]), mat, data.get("provenance"))


def morphism_to_json(m: FiniteMorphism) -> dict:
    return {
        "source": relation_to_json(m.source),
        "target": relation_to_json(m.target),
        "minus_map": list(m.minus_map),
        "plus_map": list(m.plus_map),
    }


def morphism_parts_from_json(data, base: Path | None = None):
    """``(source, target, minus_map, plus_map)`` without verifying the condition."""
    _require(data, ("source", "target", "minus_map", "plus_map"), "morphism")

    def side(v):
        if isinstance(v, str):
            path = Path(v) if base is None or Path(v).is_absolute() else base / v
            return relation_from_json(json.loads(path.read_text()))
        return relation_from_json(v)

    return side(data["source"]), side(data["target"]), list(data["minus_map"]), list(data["plus_map"])


def to_json(obj):
    """Encode any package object (ULP data exactly; lazy objects by name and a finite head)."""
    if isinstance(obj, UlpFunction):
        return obj.to_dict()
    if isinstance(obj, InfiniteSubset):
        return {"kind": "set", "characteristic": obj.characteristic.to_dict()}
    if isinstance(obj, IntervalPartition):
        return {"kind": "partition", "gaps": obj.gaps.to_dict()}
    if isinstance(obj, ChoppedReal):
        return {"kind": "chopped_real", "bits": to_json(obj.bits), "partition": to_json(obj.partition)}
    if isinstance(obj, LazyFunction):
        return {"kind": "lazy_function", "name": obj.name, "head": obj.take(HEAD)}
    if isinstance(obj, LazyPartition):
        return {"kind": "lazy_partition", "name": obj.name, "head": obj.endpoints(HEAD)}
    if isinstance(obj, LazySubset):
        return {"kind": "lazy_set", "name": obj.name, "head": obj.below(4 * HEAD)}
    if isinstance(obj, FiniteRelation):
        return relation_to_json(obj)
    if isinstance(obj, FiniteMorphism):
        return morphism_to_json(obj)
    if isinstance(obj, Verdict):
        return obj.to_dict()
    raise TypeError(f"no encoding for {type(obj).__name__}")


def from_json(data):
    """Decode a ULP dict or a ``kind``-tagged wrapper."""
    if not isinstance(data, dict):
        raise SchemaError("expected a JSON object")
    kind = data.get("kind")
    try:
        if kind is None:
            if "rel" in data:
                return relation_from_json(data)
            _require(data, ("prefix", "period", "increment", "cycle"), "ULP function")
            return UlpFunction.from_dict(data)
        if kind == "set":
            return InfiniteSubset(from_json(data["characteristic"]))
        if kind == "partition":
            return IntervalPartition(from_json(data["gaps"]))
        if kind == "chopped_real":
            return ChoppedReal(from_json(data["bits"]), from_json(data["partition"]))
    except KeyError as exc:
        raise SchemaError(f"{kind} object is missing field {exc}") from None
    except TypeError as exc:
        raise SchemaError(str(exc)) from None
    raise SchemaError(f"unknown or non-decodable kind {kind!r}")
