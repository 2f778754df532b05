"""GEXF 1.2 interchange: writer, reader, and a structural validator.

The writer emits static undirected graphs with node attributes (community,
betweenness, degree, entity type) and viz extensions (position, size,
color).  Node size is affine in betweenness between 4 and 40; colors cycle
a fixed 12-color palette by community id.  Output is byte-stable for a
fixed graph, which the pipeline relies on for reproducibility checks.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Mapping
from xml.sax.saxutils import quoteattr

from .graph import CoocGraph, GraphError, Layout

__all__ = ["GexfError", "GexfData", "PALETTE", "export_gexf", "read_gexf", "validate_gexf"]


class GexfError(ValueError):
    """Raised when a GEXF document violates the format."""


XMLNS = "http://www.gexf.net/1.2draft"
XMLNS_VIZ = "http://www.gexf.net/1.2draft/viz"

MIN_SIZE = 4.0
MAX_SIZE = 40.0

PALETTE = [
    (31, 119, 180), (255, 127, 14), (44, 160, 44), (214, 39, 40),
    (148, 103, 189), (140, 86, 75), (227, 119, 194), (127, 127, 127),
    (188, 189, 34), (23, 190, 207), (174, 199, 232), (255, 187, 120),
]

_NODE_ATTRS = [
    ("0", "community", "integer"),
    ("1", "betweenness", "double"),
    ("2", "degree", "integer"),
    ("3", "etype", "string"),
]


@dataclass
class GexfData:
    """Everything the reader recovers from a GEXF document."""

    graph: CoocGraph
    community: dict[str, int]
    betweenness: dict[str, float]
    positions: dict[str, tuple[float, float]]
    sizes: dict[str, float]
    colors: dict[str, tuple[int, int, int]]


def _sizes_from_betweenness(bc: Mapping[str, float]) -> dict[str, float]:
    if not bc:
        return {}
    lo, hi = min(bc.values()), max(bc.values())
    if hi > lo:
        return {v: MIN_SIZE + (MAX_SIZE - MIN_SIZE) * (b - lo) / (hi - lo) for v, b in bc.items()}
    return {v: MIN_SIZE for v in bc}


def export_gexf(
    g: CoocGraph,
    partition: Mapping[str, int],
    bc: Mapping[str, float],
    layout: Layout,
) -> str:
    """Render the graph as GEXF 1.2 text."""
    for v in g.node_ids:
        if v not in partition or v not in bc or v not in layout.positions:
            raise GexfError(f"node {v!r} lacks partition, centrality, or position")
    sizes = _sizes_from_betweenness({v: bc[v] for v in g.node_ids})

    out: list[str] = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(
        f'<gexf xmlns="{XMLNS}" xmlns:viz="{XMLNS_VIZ}" version="1.2">'
    )
    out.append("  <meta>")
    out.append("    <creator>entiscope</creator>")
    out.append("    <description>entity co-occurrence network</description>")
    out.append("  </meta>")
    out.append('  <graph mode="static" defaultedgetype="undirected">')
    out.append('    <attributes class="node">')
    for attr_id, title, attr_type in _NODE_ATTRS:
        out.append(f'      <attribute id="{attr_id}" title="{title}" type="{attr_type}"/>')
    out.append("    </attributes>")
    out.append("    <nodes>")
    for v in g.node_ids:
        r, gg, b = PALETTE[partition[v] % len(PALETTE)]
        x, y = layout.positions[v]
        out.append(f"      <node id={quoteattr(v)} label={quoteattr(g.labels[v])}>")
        out.append("        <attvalues>")
        out.append(f'          <attvalue for="0" value="{partition[v]}"/>')
        out.append(f'          <attvalue for="1" value="{bc[v]!r}"/>')
        out.append(f'          <attvalue for="2" value="{g.degree(v)}"/>')
        out.append(f'          <attvalue for="3" value={quoteattr(g.node_types[v])}/>')
        out.append("        </attvalues>")
        out.append(f'        <viz:size value="{sizes[v]!r}"/>')
        out.append(f'        <viz:position x="{x!r}" y="{y!r}" z="0.0"/>')
        out.append(f'        <viz:color r="{r}" g="{gg}" b="{b}"/>')
        out.append("      </node>")
    out.append("    </nodes>")
    out.append("    <edges>")
    for i, (u, v, w) in enumerate(g.edges()):
        out.append(
            f'      <edge id="e{i}" source={quoteattr(u)} target={quoteattr(v)} weight="{w}"/>'
        )
    out.append("    </edges>")
    out.append("  </graph>")
    out.append("</gexf>")
    return "\n".join(out) + "\n"


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _children(elem: ET.Element, name: str) -> list[ET.Element]:
    return [c for c in elem if _local(c.tag) == name]


def _first(elem: ET.Element, name: str) -> ET.Element | None:
    found = _children(elem, name)
    return found[0] if found else None


def read_gexf(text: str) -> GexfData:
    """Parse a GEXF document produced by :func:`export_gexf` (or compatible)."""
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise GexfError(f"not well-formed XML: {exc}") from None
    if _local(root.tag) != "gexf":
        raise GexfError(f"root element is {_local(root.tag)!r}, expected 'gexf'")
    graph_el = _first(root, "graph")
    if graph_el is None:
        raise GexfError("missing <graph> element")

    titles: dict[str, str] = {}
    for attrs_el in _children(graph_el, "attributes"):
        for a in _children(attrs_el, "attribute"):
            titles[a.get("id", "")] = a.get("title", "")

    g = CoocGraph()
    community: dict[str, int] = {}
    bc: dict[str, float] = {}
    positions: dict[str, tuple[float, float]] = {}
    sizes: dict[str, float] = {}
    colors: dict[str, tuple[int, int, int]] = {}

    nodes_el = _first(graph_el, "nodes")
    for node in _children(nodes_el, "node") if nodes_el is not None else []:
        node_id = node.get("id")
        if node_id is None:
            raise GexfError("node without id")
        label = node.get("label", node_id)
        etype = ""
        attvalues = _first(node, "attvalues")
        fields: dict[str, str] = {}
        if attvalues is not None:
            for av in _children(attvalues, "attvalue"):
                fields[titles.get(av.get("for", ""), av.get("for", ""))] = av.get("value", "")
        if "etype" in fields:
            etype = fields["etype"]
        try:
            g.add_node(node_id, label, etype)
        except GraphError as exc:
            raise GexfError(str(exc)) from None
        if "community" in fields:
            community[node_id] = int(fields["community"])
        if "betweenness" in fields:
            bc[node_id] = float(fields["betweenness"])
        pos_el = _first(node, "position")
        if pos_el is not None:
            positions[node_id] = (float(pos_el.get("x", "0")), float(pos_el.get("y", "0")))
        size_el = _first(node, "size")
        if size_el is not None:
            sizes[node_id] = float(size_el.get("value", "0"))
        color_el = _first(node, "color")
        if color_el is not None:
            colors[node_id] = (
                int(color_el.get("r", "0")), int(color_el.get("g", "0")), int(color_el.get("b", "0")),
            )

    edges_el = _first(graph_el, "edges")
    for edge in _children(edges_el, "edge") if edges_el is not None else []:
        u, v = edge.get("source"), edge.get("target")
        if u is None or v is None:
            raise GexfError("edge without source/target")
        weight = edge.get("weight", "1")
        try:
            g.add_edge(u, v, int(float(weight)))
        except (GraphError, ValueError) as exc:
            raise GexfError(f"bad edge {u!r}-{v!r}: {exc}") from None
    return GexfData(g, community, bc, positions, sizes, colors)


def _typed(value: str, kind: str, context: str) -> None:
    try:
        int(value) if kind in ("integer", "long") else float(value)
    except ValueError:
        raise GexfError(f"{context}: {value!r} is not a valid {kind}") from None


def validate_gexf(text: str) -> None:
    """Structural GEXF 1.2 conformance check; raises GexfError on violation.

    Covers the constraints this pipeline relies on: correct namespaces and
    version, static undirected graph, declared node attributes with typed
    values, unique node/edge ids, edges referencing existing nodes with at
    most one edge per unordered pair and positive weight, and well-formed
    viz position/size/color elements.
    """
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise GexfError(f"not well-formed XML: {exc}") from None
    if _local(root.tag) != "gexf":
        raise GexfError("root element must be <gexf>")
    ns = root.tag[1:].split("}")[0] if root.tag.startswith("{") else ""
    if ns != XMLNS:
        raise GexfError(f"unexpected gexf namespace {ns!r}")
    if root.get("version") != "1.2":
        raise GexfError(f"unsupported version {root.get('version')!r}")
    graph_el = _first(root, "graph")
    if graph_el is None:
        raise GexfError("missing <graph> element")
    if graph_el.get("defaultedgetype", "undirected") != "undirected":
        raise GexfError("graph must be undirected")

    declared: dict[str, str] = {}
    for attrs_el in _children(graph_el, "attributes"):
        for a in _children(attrs_el, "attribute"):
            attr_id, attr_type = a.get("id"), a.get("type")
            if attr_id is None or attr_id in declared:
                raise GexfError("attribute declarations must have unique ids")
            if attr_type not in ("integer", "long", "double", "float", "string", "boolean"):
                raise GexfError(f"unknown attribute type {attr_type!r}")
            declared[attr_id] = attr_type

    node_ids: set[str] = set()
    nodes_el = _first(graph_el, "nodes")
    for node in _children(nodes_el, "node") if nodes_el is not None else []:
        node_id = node.get("id")
        if node_id is None or node_id in node_ids:
            raise GexfError("nodes must have unique ids")
        node_ids.add(node_id)
        attvalues = _first(node, "attvalues")
        if attvalues is not None:
            for av in _children(attvalues, "attvalue"):
                ref = av.get("for")
                if ref not in declared:
                    raise GexfError(f"attvalue references undeclared attribute {ref!r}")
                value = av.get("value")
                if value is None:
                    raise GexfError("attvalue without value")
                if declared[ref] in ("integer", "long", "double", "float"):
                    _typed(value, declared[ref], f"attvalue for {ref!r}")
        pos_el = _first(node, "position")
        if pos_el is not None:
            _typed(pos_el.get("x", ""), "double", "viz position x")
            _typed(pos_el.get("y", ""), "double", "viz position y")
        size_el = _first(node, "size")
        if size_el is not None:
            _typed(size_el.get("value", ""), "double", "viz size")
            if not float(size_el.get("value")) > 0:
                raise GexfError("viz size must be positive")
        color_el = _first(node, "color")
        if color_el is not None:
            for channel in ("r", "g", "b"):
                _typed(color_el.get(channel, ""), "integer", f"viz color {channel}")
                if not 0 <= int(color_el.get(channel)) <= 255:
                    raise GexfError(f"color channel {channel} out of range")

    edge_ids: set[str] = set()
    seen_pairs: set[tuple[str, str]] = set()
    edges_el = _first(graph_el, "edges")
    for edge in _children(edges_el, "edge") if edges_el is not None else []:
        edge_id = edge.get("id")
        if edge_id is None or edge_id in edge_ids:
            raise GexfError("edges must have unique ids")
        edge_ids.add(edge_id)
        u, v = edge.get("source"), edge.get("target")
        if u not in node_ids or v not in node_ids:
            raise GexfError(f"edge {edge_id!r} references missing node")
        if u == v:
            raise GexfError(f"edge {edge_id!r} is a self-loop")
        pair = (min(u, v), max(u, v))
        if pair in seen_pairs:
            raise GexfError(f"duplicate edge between {u!r} and {v!r}")
        seen_pairs.add(pair)
        _typed(edge.get("weight", "1"), "double", f"edge {edge_id!r} weight")
        if not float(edge.get("weight", "1")) > 0:
            raise GexfError(f"edge {edge_id!r} has non-positive weight")
