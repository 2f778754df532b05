// Pure scene construction for the network panel: map stored GEXF positions,
// sizes, and colors onto screen coordinates.  No layout is re-run here.

import { GexfGraph } from "./gexf.js";

export interface SceneNode {
  id: string;
  label: string;
  x: number;
  y: number;
  radius: number;
  fill: string;
  community: number;
  betweenness: number;
}

export interface SceneEdge {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  width: number;
  weight: number;
}

export interface NetworkScene {
  nodes: SceneNode[];
  edges: SceneEdge[];
  width: number;
  height: number;
}

export function buildNetworkScene(
  graph: GexfGraph,
  width = 900,
  height = 600,
): NetworkScene {
  const pad = 40;
  const xs = graph.nodes.map((n) => n.x);
  const ys = graph.nodes.map((n) => n.y);
  const minX = Math.min(...xs, 0);
  const maxX = Math.max(...xs, 1);
  const minY = Math.min(...ys, 0);
  const maxY = Math.max(...ys, 1);
  const sx = (x: number) =>
    maxX > minX ? pad + ((x - minX) / (maxX - minX)) * (width - 2 * pad) : width / 2;
  const sy = (y: number) =>
    maxY > minY ? pad + ((y - minY) / (maxY - minY)) * (height - 2 * pad) : height / 2;

  const place = new Map<string, { x: number; y: number }>();
  const nodes = graph.nodes.map((n) => {
    const pos = { x: sx(n.x), y: sy(n.y) };
    place.set(n.id, pos);
    return {
      id: n.id,
      label: n.label,
      x: pos.x,
      y: pos.y,
      radius: Math.max(n.size / 2, 2),
      fill: `rgb(${n.color.r}, ${n.color.g}, ${n.color.b})`,
      community: n.community,
      betweenness: n.betweenness,
    };
  });

  const maxWeight = Math.max(...graph.edges.map((e) => e.weight), 1);
  const edges = graph.edges.map((e) => {
    const a = place.get(e.source);
    const b = place.get(e.target);
    if (!a || !b) {
      throw new Error(`edge ${e.source}-${e.target} references a missing node`);
    }
    return {
      x1: a.x,
      y1: a.y,
      x2: b.x,
      y2: b.y,
      width: 1 + (e.weight / maxWeight) * 4,
      weight: e.weight,
    };
  });
  return { nodes, edges, width, height };
}
