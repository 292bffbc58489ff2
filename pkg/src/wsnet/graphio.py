"""Graph serialization: GraphML (authoritative, round-trips), DOT and a flat
CSV link list.

GraphML files carry the similarity kind as a graph attribute and, per node,
the service, operation name, parameter sets (JSON-encoded arrays) and any
declared parameter types, so a graph file is self-contained for analysis.
DOT and CSV are one-way export formats for visualization and spreadsheets.
"""

from __future__ import annotations

import csv
import io
import json
import xml.etree.ElementTree as ET

from .model import Collection, Operation
from .network import SimilarityNetwork
from .similarity import as_kind

GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"

_NODE_KEYS = ("service", "operation", "inputs", "outputs", "types")


class GraphFormatError(ValueError):
    """A graph file that cannot be decoded."""


def _node_attributes(op: Operation) -> dict[str, str]:
    attributes = {
        "service": op.service,
        "operation": op.name,
        "inputs": json.dumps(sorted(op.inputs), ensure_ascii=False),
        "outputs": json.dumps(sorted(op.outputs), ensure_ascii=False),
    }
    if op.annotations:
        attributes["types"] = json.dumps(
            {k: op.annotations[k] for k in sorted(op.annotations)}, ensure_ascii=False
        )
    return attributes


def graphml_dumps(network: SimilarityNetwork, collection: Collection) -> str:
    """Serialize a network and its node metadata as GraphML."""
    root = ET.Element("graphml", xmlns=GRAPHML_NS)
    ET.SubElement(
        root, "key", id="kind", **{"for": "graph", "attr.name": "kind", "attr.type": "string"}
    )
    for name in _NODE_KEYS:
        ET.SubElement(
            root, "key", id=name, **{"for": "node", "attr.name": name, "attr.type": "string"}
        )
    graph = ET.SubElement(
        root, "graph", id="G", edgedefault="directed" if network.directed else "undirected"
    )
    kind_data = ET.SubElement(graph, "data", key="kind")
    kind_data.text = network.kind.value
    for node_id in sorted(network.nodes):
        node = ET.SubElement(graph, "node", id=node_id)
        if node_id in collection:
            for key, value in _node_attributes(collection.operation(node_id)).items():
                data = ET.SubElement(node, "data", key=key)
                data.text = value
    for source, target in sorted(network.links):
        ET.SubElement(graph, "edge", source=source, target=target)
    ET.indent(root)
    return ET.tostring(root, encoding="unicode", xml_declaration=True) + "\n"


def _data_of(element: ET.Element) -> dict[str, str]:
    values = {}
    for data in element.findall(f"{{{GRAPHML_NS}}}data"):
        key = data.get("key")
        if key:
            values[key] = data.text or ""
    return values


def _json_list(text: str, context: str) -> list[str]:
    try:
        value = json.loads(text) if text else []
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{context}: invalid JSON attribute") from exc
    if not isinstance(value, list) or any(not isinstance(item, str) for item in value):
        raise GraphFormatError(f"{context}: expected a JSON array of strings")
    return value


def graphml_loads(text: str) -> tuple[SimilarityNetwork, Collection]:
    """Parse a GraphML file produced by :func:`graphml_dumps`."""
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise GraphFormatError(f"not well-formed GraphML: {exc}") from exc
    graph = root.find(f"{{{GRAPHML_NS}}}graph")
    if graph is None:
        raise GraphFormatError("no <graph> element found")
    kind_text = _data_of(graph).get("kind")
    if not kind_text:
        raise GraphFormatError("graph is missing its similarity 'kind' attribute")
    try:
        kind = as_kind(kind_text)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc

    nodes = set()
    operations = []
    for node in graph.findall(f"{{{GRAPHML_NS}}}node"):
        node_id = node.get("id")
        if not node_id:
            raise GraphFormatError("node without id")
        if node_id in nodes:
            raise GraphFormatError(f"duplicate node id {node_id!r}")
        nodes.add(node_id)
        data = _data_of(node)
        if "operation" in data or "service" in data:
            types_text = data.get("types", "")
            try:
                types = json.loads(types_text) if types_text else {}
            except json.JSONDecodeError as exc:
                raise GraphFormatError(f"node {node_id}: invalid 'types' attribute") from exc
            operations.append(
                Operation(
                    id=node_id,
                    name=data.get("operation", ""),
                    service=data.get("service", ""),
                    inputs=frozenset(_json_list(data.get("inputs", ""), f"node {node_id}")),
                    outputs=frozenset(_json_list(data.get("outputs", ""), f"node {node_id}")),
                    annotations=types,
                )
            )

    links = set()
    for edge in graph.findall(f"{{{GRAPHML_NS}}}edge"):
        source, target = edge.get("source"), edge.get("target")
        if not source or not target or source not in nodes or target not in nodes:
            raise GraphFormatError(f"edge {source!r} -> {target!r} references unknown nodes")
        if source == target:
            raise GraphFormatError(f"self-loop on {source!r}")
        links.add((source, target) if kind.directed or source <= target else (target, source))

    network = SimilarityNetwork(kind, frozenset(nodes), frozenset(links))
    return network, Collection(tuple(operations), source="graphml")


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def dot_dumps(network: SimilarityNetwork, collection: Collection) -> str:
    """Serialize for Graphviz; node labels are the operation names."""
    directed = network.directed
    lines = ["digraph similarity {" if directed else "graph similarity {"]
    arrow = "->" if directed else "--"
    for node_id in sorted(network.nodes):
        label = collection.operation(node_id).name if node_id in collection else node_id
        lines.append(f"  {_dot_quote(node_id)} [label={_dot_quote(label)}];")
    for source, target in sorted(network.links):
        lines.append(f"  {_dot_quote(source)} {arrow} {_dot_quote(target)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def csv_dumps(network: SimilarityNetwork) -> str:
    """Flat link list: source, target, kind."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["source", "target", "kind"])
    for source, target in sorted(network.links):
        writer.writerow([source, target, network.kind.value])
    return buffer.getvalue()
