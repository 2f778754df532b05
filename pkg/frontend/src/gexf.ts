// GEXF reader for the network artifact: node positions, sizes and colors
// are taken as stored in the file; the viewer never re-runs layout.

import { localName, parseXml, XmlElement } from "./xml.js";

export interface RgbColor {
  r: number;
  g: number;
  b: number;
}

export interface GraphNode {
  id: string;
  label: string;
  community: number;
  betweenness: number;
  degree: number;
  etype: string;
  x: number;
  y: number;
  size: number;
  color: RgbColor;
}

export interface GraphEdge {
  source: string;
  target: string;
  weight: number;
}

export interface GexfGraph {
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export class GexfParseError extends Error {}

function children(el: XmlElement, name: string): XmlElement[] {
  return el.children.filter((c) => localName(c.tag) === name);
}

function firstChild(el: XmlElement, name: string): XmlElement | undefined {
  return children(el, name)[0];
}

function numberAttr(el: XmlElement, name: string, context: string): number {
  const raw = el.attrs[name];
  const value = Number(raw);
  if (raw === undefined || Number.isNaN(value)) {
    throw new GexfParseError(`${context}: attribute ${name} is not a number (${raw})`);
  }
  return value;
}

export function parseGexf(text: string): GexfGraph {
  let root: XmlElement;
  try {
    root = parseXml(text);
  } catch (err) {
    throw new GexfParseError(`not well-formed XML: ${(err as Error).message}`);
  }
  if (localName(root.tag) !== "gexf") {
    throw new GexfParseError(`root element is <${root.tag}>, expected <gexf>`);
  }
  const graph = firstChild(root, "graph");
  if (!graph) {
    throw new GexfParseError("missing <graph> element");
  }

  const attrTitles: Record<string, string> = {};
  for (const attrs of children(graph, "attributes")) {
    for (const attr of children(attrs, "attribute")) {
      if (attr.attrs.id !== undefined) {
        attrTitles[attr.attrs.id] = attr.attrs.title ?? attr.attrs.id;
      }
    }
  }

  const nodes: GraphNode[] = [];
  const seen = new Set<string>();
  const nodesEl = firstChild(graph, "nodes");
  for (const nodeEl of nodesEl ? children(nodesEl, "node") : []) {
    const id = nodeEl.attrs.id;
    if (id === undefined) throw new GexfParseError("node without id");
    if (seen.has(id)) throw new GexfParseError(`duplicate node id ${id}`);
    seen.add(id);

    const fields: Record<string, string> = {};
    const attvalues = firstChild(nodeEl, "attvalues");
    for (const av of attvalues ? children(attvalues, "attvalue") : []) {
      const key = attrTitles[av.attrs.for ?? ""] ?? av.attrs.for ?? "";
      fields[key] = av.attrs.value ?? "";
    }

    const position = firstChild(nodeEl, "position");
    const sizeEl = firstChild(nodeEl, "size");
    const colorEl = firstChild(nodeEl, "color");
    nodes.push({
      id,
      label: nodeEl.attrs.label ?? id,
      community: fields.community !== undefined ? Number(fields.community) : 0,
      betweenness: fields.betweenness !== undefined ? Number(fields.betweenness) : 0,
      degree: fields.degree !== undefined ? Number(fields.degree) : 0,
      etype: fields.etype ?? "",
      x: position ? numberAttr(position, "x", `node ${id}`) : 0,
      y: position ? numberAttr(position, "y", `node ${id}`) : 0,
      size: sizeEl ? numberAttr(sizeEl, "value", `node ${id}`) : 1,
      color: colorEl
        ? {
            r: numberAttr(colorEl, "r", `node ${id}`),
            g: numberAttr(colorEl, "g", `node ${id}`),
            b: numberAttr(colorEl, "b", `node ${id}`),
          }
        : { r: 128, g: 128, b: 128 },
    });
  }

  const edges: GraphEdge[] = [];
  const edgesEl = firstChild(graph, "edges");
  for (const edgeEl of edgesEl ? children(edgesEl, "edge") : []) {
    const source = edgeEl.attrs.source;
    const target = edgeEl.attrs.target;
    if (source === undefined || target === undefined) {
      throw new GexfParseError("edge without source/target");
    }
    if (!seen.has(source) || !seen.has(target)) {
      throw new GexfParseError(`edge ${source}-${target} references a missing node`);
    }
    edges.push({
      source,
      target,
      weight: edgeEl.attrs.weight !== undefined ? Number(edgeEl.attrs.weight) : 1,
    });
  }
  return { nodes, edges };
}
