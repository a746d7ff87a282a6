"""Serialization of strong graphs to DOT, GraphML and JSON.

All three forms carry the same information: nodes labeled with feature
names, directed dependency arcs tagged ``requires``, and one element per
conflict pair tagged ``excludes``. Element order is deterministic (sorted
by feature index) so exports diff cleanly. The JSON form also includes the
core/dead classification and round-trips through ``graphs_from_json``.

DOT renders conflict pairs with ``dir=none`` so they draw as undirected;
GraphML keeps everything in one directed graph and relies on the
``relation`` attribute, because common readers refuse mixed graphs.
"""

from __future__ import annotations

import json
from xml.sax.saxutils import escape

from .strong_graphs import FeatureClassification, StrongGraphs

FORMATS = ("dot", "graphml", "json")


def export_graph(graphs: StrongGraphs, fmt: str) -> str:
    """Render the graphs in one of FORMATS."""
    if fmt == "dot":
        return _to_dot(graphs)
    if fmt == "graphml":
        return _to_graphml(graphs)
    if fmt == "json":
        return _to_json(graphs)
    raise ValueError(f"unknown export format {fmt!r}; expected one of {FORMATS}")


def _quote_dot(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _to_dot(graphs: StrongGraphs) -> str:
    lines = ["digraph strong_graphs {"]
    for v in sorted(graphs.nodes):
        lines.append(f"    {_quote_dot(graphs.name_of(v))} [index={v}];")
    for source, target in sorted(graphs.dep_arcs):
        lines.append(
            f"    {_quote_dot(graphs.name_of(source))} -> "
            f"{_quote_dot(graphs.name_of(target))} [relation=requires];"
        )
    for a, b in sorted(graphs.conflict_edges):
        lines.append(
            f"    {_quote_dot(graphs.name_of(a))} -> "
            f"{_quote_dot(graphs.name_of(b))} [dir=none, relation=excludes];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _to_graphml(graphs: StrongGraphs) -> str:
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns"',
        '         xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance"',
        '         xsi:schemaLocation="http://graphml.graphdrawing.org/xmlns'
        ' http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd">',
        '  <key id="label" for="node" attr.name="label" attr.type="string"/>',
        '  <key id="relation" for="edge" attr.name="relation" attr.type="string"/>',
        '  <graph id="strong_graphs" edgedefault="directed">',
    ]
    for v in sorted(graphs.nodes):
        lines.append(
            f'    <node id="n{v}"><data key="label">'
            f"{escape(graphs.name_of(v))}</data></node>"
        )
    for source, target in sorted(graphs.dep_arcs):
        lines.append(
            f'    <edge source="n{source}" target="n{target}">'
            '<data key="relation">requires</data></edge>'
        )
    for a, b in sorted(graphs.conflict_edges):
        lines.append(
            f'    <edge source="n{a}" target="n{b}">'
            '<data key="relation">excludes</data></edge>'
        )
    lines.extend(["  </graph>", "</graphml>"])
    return "\n".join(lines) + "\n"


def _to_json(graphs: StrongGraphs) -> str:
    def feature_list(values) -> list[dict]:
        return [{"index": v, "name": graphs.name_of(v)} for v in sorted(values)]

    payload = {
        "num_vars": graphs.classification.num_vars,
        "nodes": feature_list(graphs.nodes),
        "core": feature_list(graphs.classification.core),
        "dead": feature_list(graphs.classification.dead),
        "arcs": [list(arc) for arc in sorted(graphs.dep_arcs)],
        "conflict_edges": [list(edge) for edge in sorted(graphs.conflict_edges)],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def graphs_from_json(text: str) -> StrongGraphs:
    """Rebuild a StrongGraphs artifact from its JSON export."""
    payload = json.loads(text)
    names = {}
    groups = {}
    for key in ("nodes", "core", "dead"):
        indices = set()
        for entry in payload[key]:
            indices.add(entry["index"])
            names[entry["index"]] = entry["name"]
        groups[key] = frozenset(indices)
    classification = FeatureClassification(
        num_vars=payload["num_vars"],
        core=groups["core"],
        dead=groups["dead"],
        configurable=groups["nodes"],
    )
    return StrongGraphs(
        nodes=groups["nodes"],
        dep_arcs=frozenset((a, b) for a, b in payload["arcs"]),
        conflict_edges=frozenset((a, b) for a, b in payload["conflict_edges"]),
        classification=classification,
        names=names,
    )
