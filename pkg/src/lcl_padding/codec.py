"""Canonical JSON serialization of a graph plus named labeling layers.

Document layout::

    {"format": "lcl-padding/graph-1",
     "meta":  {"n": ..., "delta": ..., ...extra},
     "nodes": [{"id": 1, "degree": 2, "labels": {"input": ...}}, ...],
     "edges": [{"side0": {"node": 1, "port": 1, "labels": {...}},
                "side1": {"node": 2, "port": 1, "labels": {...}},
                "labels": {...}}, ...]}

Nodes are ordered by id, edges by index, keys are sorted and separators fixed,
so equal inputs give byte-identical streams. Label symbols are encoded as:
scalars as themselves, tuples as ``{"tuple": [...]}``, frozensets as
``{"set": [...]}`` (sorted by encoding), and registered named tuples as
``{"type": name, "fields": [...]}``.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .graph import Endpoint, GraphError, HalfEdge, Labeling, PortedMultigraph

FORMAT = "lcl-padding/graph-1"

_TYPES: dict[str, type] = {}


class DecodeError(ValueError):
    pass


def register(cls):
    """Class decorator making a NamedTuple label type serializable."""
    _TYPES[cls.__name__] = cls
    return cls


def dump_symbol(x: Any) -> Any:
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, tuple) and hasattr(x, "_fields"):
        name = type(x).__name__
        if name not in _TYPES:
            raise TypeError(f"label type {name} is not registered")
        return {"type": name, "fields": [dump_symbol(v) for v in x]}
    if isinstance(x, tuple):
        return {"tuple": [dump_symbol(v) for v in x]}
    if isinstance(x, frozenset):
        items = [dump_symbol(v) for v in x]
        items.sort(key=lambda v: json.dumps(v, sort_keys=True))
        return {"set": items}
    raise TypeError(f"cannot serialize label {x!r}")


def load_symbol(x: Any) -> Any:
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, dict):
        if "type" in x:
            cls = _TYPES.get(x["type"])
            if cls is None:
                raise DecodeError(f"unknown label type {x['type']!r}")
            return cls(*[load_symbol(v) for v in x["fields"]])
        if "tuple" in x:
            return tuple(load_symbol(v) for v in x["tuple"])
        if "set" in x:
            return frozenset(load_symbol(v) for v in x["set"])
    raise DecodeError(f"malformed label {x!r}")


def encode(g: PortedMultigraph, layers: Mapping[str, Labeling] | Labeling | None = None,
           meta: Mapping[str, Any] | None = None) -> bytes:
    if layers is None:
        layers = {}
    elif isinstance(layers, Labeling):
        layers = {"input": layers}
    names = sorted(layers)
    doc_meta = {"n": g.n, "delta": g.max_degree()}
    if meta:
        doc_meta.update(meta)
    nodes = []
    for v, d in g.degrees.items():
        labs = {k: dump_symbol(layers[k].nodes[v]) for k in names if v in layers[k].nodes}
        nodes.append({"id": v, "degree": d, "labels": labs})
    edges = []
    for i, (a, b) in g.edges.items():
        rec = {"labels": {k: dump_symbol(layers[k].edges[i]) for k in names if i in layers[k].edges}}
        if i != len(edges):
            rec["index"] = i
        for side, end in enumerate((a, b)):
            h = HalfEdge(i, side)
            rec[f"side{side}"] = {
                "node": end.node, "port": end.port,
                "labels": {k: dump_symbol(layers[k].halves[h]) for k in names if h in layers[k].halves},
            }
        edges.append(rec)
    doc = {"format": FORMAT, "meta": doc_meta, "nodes": nodes, "edges": edges}
    return (json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n").encode()


def decode(stream: bytes | str, alphabets: Mapping[str, Any] | None = None):
    """Inverse of :func:`encode`. Returns ``(graph, layers, meta)``.

    ``alphabets`` optionally maps a layer name to an object with ``v``, ``e``,
    ``b`` alphabets; labels outside them raise :class:`DecodeError`.
    """
    try:
        doc = json.loads(stream)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise DecodeError(f"not a JSON document: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise DecodeError("missing or unknown format tag")
    try:
        degrees = {}
        layers: dict[str, Labeling] = {}

        def layer(name):
            return layers.setdefault(name, Labeling())

        for rec in doc["nodes"]:
            v = int(rec["id"])
            if v in degrees:
                raise DecodeError(f"duplicate node id {v}")
            degrees[v] = int(rec["degree"])
            for k, x in rec["labels"].items():
                layer(k).nodes[v] = load_symbol(x)
        edges = {}
        for pos, rec in enumerate(doc["edges"]):
            i = int(rec.get("index", pos))
            ends = []
            for side in (0, 1):
                s = rec[f"side{side}"]
                ends.append(Endpoint(int(s["node"]), int(s["port"])))
                for k, x in s["labels"].items():
                    layer(k).halves[HalfEdge(i, side)] = load_symbol(x)
            for k, x in rec["labels"].items():
                layer(k).edges[i] = load_symbol(x)
            edges[i] = tuple(ends)
        g = PortedMultigraph(degrees, edges)
    except GraphError as exc:
        raise DecodeError(str(exc)) from None
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DecodeError):
            raise
        raise DecodeError(f"malformed document: {exc!r}") from None
    if alphabets:
        for name, alpha in alphabets.items():
            lab = layers.get(name)
            if lab is None:
                continue
            for where, table, a in (("node", lab.nodes, alpha.v), ("edge", lab.edges, alpha.e),
                                    ("half-edge", lab.halves, alpha.b)):
                for key, x in table.items():
                    if x not in a:
                        raise DecodeError(f"{name} label {x!r} on {where} {key} outside alphabet")
    return g, layers, doc.get("meta", {})
