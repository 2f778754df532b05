import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { GexfParseError, parseGexf } from "../src/gexf.js";
import { buildNetworkScene } from "../src/scene.js";

const fixture = readFileSync(new URL("./fixtures/graph.gexf", import.meta.url), "utf8");

describe("parseGexf", () => {
  it("reads every node and edge of the pipeline artifact", () => {
    const graph = parseGexf(fixture);
    const declaredNodes = (fixture.match(/<node /g) ?? []).length;
    const declaredEdges = (fixture.match(/<edge /g) ?? []).length;
    expect(graph.nodes.length).toBe(declaredNodes);
    expect(graph.edges.length).toBe(declaredEdges);
    expect(graph.nodes.length).toBeGreaterThan(0);
  });

  it("keeps stored attributes, positions, sizes and colors", () => {
    const graph = parseGexf(fixture);
    for (const node of graph.nodes) {
      expect(Number.isFinite(node.x)).toBe(true);
      expect(Number.isFinite(node.y)).toBe(true);
      expect(node.size).toBeGreaterThanOrEqual(4);
      expect(node.size).toBeLessThanOrEqual(40);
      expect(node.community).toBeGreaterThanOrEqual(0);
      expect(node.label.length).toBeGreaterThan(0);
      for (const channel of [node.color.r, node.color.g, node.color.b]) {
        expect(channel).toBeGreaterThanOrEqual(0);
        expect(channel).toBeLessThanOrEqual(255);
      }
    }
    const ids = new Set(graph.nodes.map((n) => n.id));
    for (const edge of graph.edges) {
      expect(ids.has(edge.source)).toBe(true);
      expect(ids.has(edge.target)).toBe(true);
      expect(edge.weight).toBeGreaterThan(0);
    }
  });

  it("resolves attvalues through the declared attribute titles", () => {
    const graph = parseGexf(fixture);
    const totalBetweenness = graph.nodes.reduce((s, n) => s + n.betweenness, 0);
    expect(totalBetweenness).toBeGreaterThan(0);
    expect(graph.nodes.some((n) => n.etype === "ORGANIZATION")).toBe(true);
    expect(graph.nodes.some((n) => n.etype === "PERSON")).toBe(true);
  });

  it("rejects malformed XML with a located error", () => {
    expect(() => parseGexf("<gexf><graph><nodes>")).toThrow(GexfParseError);
    expect(() => parseGexf("plainly not xml")).toThrow(/not well-formed/);
  });

  it("rejects edges to missing nodes", () => {
    const bad = `<gexf version="1.2"><graph>
      <nodes><node id="a" label="a"/></nodes>
      <edges><edge id="e0" source="a" target="ghost"/></edges>
    </graph></gexf>`;
    expect(() => parseGexf(bad)).toThrow(/missing node/);
  });
});

describe("buildNetworkScene", () => {
  it("renders one circle per file node without re-running layout", () => {
    const graph = parseGexf(fixture);
    const scene = buildNetworkScene(graph);
    expect(scene.nodes.length).toBe(graph.nodes.length);
    expect(scene.edges.length).toBe(graph.edges.length);
  });

  it("gives the largest radius to the highest-betweenness node", () => {
    const graph = parseGexf(fixture);
    const scene = buildNetworkScene(graph);
    const byBetweenness = [...graph.nodes].sort((a, b) => b.betweenness - a.betweenness);
    const top = scene.nodes.find((n) => n.id === byBetweenness[0].id);
    const maxRadius = Math.max(...scene.nodes.map((n) => n.radius));
    expect(top?.radius).toBe(maxRadius);
  });

  it("maps stored positions monotonically onto the canvas", () => {
    const graph = parseGexf(fixture);
    const scene = buildNetworkScene(graph, 800, 500);
    const left = graph.nodes.reduce((a, b) => (a.x <= b.x ? a : b));
    const right = graph.nodes.reduce((a, b) => (a.x >= b.x ? a : b));
    const sceneLeft = scene.nodes.find((n) => n.id === left.id)!;
    const sceneRight = scene.nodes.find((n) => n.id === right.id)!;
    expect(sceneLeft.x).toBeLessThanOrEqual(sceneRight.x);
  });
});
