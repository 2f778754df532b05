// SVG rendering: thin DOM layer over the pure scene/layout builders.

import { NetworkScene } from "./scene.js";
import { SankeyLayout, SankeyPeriod } from "./sankey.js";
import { DiffView } from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function svgElement(tag: string, attrs: Record<string, string | number>): SVGElement {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, String(value));
  }
  return el;
}

export function renderNetwork(
  container: HTMLElement,
  scene: NetworkScene,
  onNodeClick: (id: string) => void,
): void {
  container.replaceChildren();
  const svg = svgElement("svg", {
    viewBox: `0 0 ${scene.width} ${scene.height}`,
    width: "100%",
    height: "100%",
  });
  for (const edge of scene.edges) {
    svg.appendChild(
      svgElement("line", {
        x1: edge.x1, y1: edge.y1, x2: edge.x2, y2: edge.y2,
        stroke: "#b9b9b9", "stroke-width": edge.width, "stroke-opacity": 0.7,
      }),
    );
  }
  for (const node of scene.nodes) {
    const circle = svgElement("circle", {
      cx: node.x, cy: node.y, r: node.radius, fill: node.fill,
      stroke: "#333", "stroke-width": 0.8, class: "graph-node",
    });
    circle.addEventListener("click", () => onNodeClick(node.id));
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${node.label} (community ${node.community}, `
      + `betweenness ${node.betweenness.toFixed(4)})`;
    circle.appendChild(title);
    svg.appendChild(circle);

    const text = svgElement("text", {
      x: node.x + node.radius + 3, y: node.y + 3, "font-size": 10,
    });
    text.textContent = node.label;
    svg.appendChild(text);
  }
  container.appendChild(svg);
}

export function renderStreams(
  container: HTMLElement,
  layout: SankeyLayout,
  periods: SankeyPeriod[],
  width: number,
  height: number,
  onTubeClick: (index: number) => void,
  onNodeClick: (id: string) => void,
): void {
  container.replaceChildren();
  const svg = svgElement("svg", {
    viewBox: `0 0 ${width} ${height}`,
    width: "100%",
    height: "100%",
  });
  for (const tube of layout.tubes) {
    const midX = (tube.x1 + tube.x2) / 2;
    const path = svgElement("path", {
      d: `M ${tube.x1} ${tube.y1} C ${midX} ${tube.y1}, ${midX} ${tube.y2}, `
        + `${tube.x2} ${tube.y2}`,
      fill: "none",
      stroke: "#9aa7b5",
      "stroke-opacity": 0.55,
      "stroke-width": tube.strokeWidth,
      class: "stream-tube",
    });
    path.addEventListener("click", () => onTubeClick(tube.index));
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${tube.tube.from} -> ${tube.tube.to} `
      + `(${tube.tube.weight} shared)`;
    path.appendChild(title);
    svg.appendChild(path);
  }
  for (const laid of layout.nodes) {
    const rect = svgElement("rect", {
      x: laid.x, y: laid.y, width: laid.width, height: laid.height,
      fill: "#3a6ea5", rx: 2, class: "stream-node",
    });
    rect.addEventListener("click", () => onNodeClick(laid.node.id));
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = laid.node.id;
    rect.appendChild(title);
    svg.appendChild(rect);

    const text = svgElement("text", {
      x: laid.x + laid.width + 4, y: laid.y + laid.height / 2 + 3, "font-size": 10,
    });
    text.textContent = laid.node.entity;
    svg.appendChild(text);
  }
  periods.forEach((p, i) => {
    const label = svgElement("text", {
      x: layout.columnX[i], y: 14, "font-size": 11, "text-anchor": "middle",
      "font-weight": "bold",
    });
    label.textContent = `${p.start_year}-${p.end_year}`;
    svg.appendChild(label);
  });
  container.appendChild(svg);
}

function termList(title: string, terms: string[]): HTMLElement {
  const block = document.createElement("div");
  block.className = "term-block";
  const heading = document.createElement("h3");
  heading.textContent = `${title} (${terms.length})`;
  block.appendChild(heading);
  const list = document.createElement("ul");
  for (const term of terms) {
    const item = document.createElement("li");
    item.textContent = term;
    list.appendChild(item);
  }
  block.appendChild(list);
  return block;
}

export function renderDiff(container: HTMLElement, diff: DiffView): void {
  container.replaceChildren();
  const heading = document.createElement("h2");
  heading.textContent = `${diff.a} vs ${diff.b}`;
  container.appendChild(heading);
  container.appendChild(termList("Common terms", diff.common));
  container.appendChild(termList(`Only in ${diff.a}`, diff.onlyA));
  container.appendChild(termList(`Only in ${diff.b}`, diff.onlyB));
}

export function renderError(container: HTMLElement, message: string): void {
  container.textContent = message;
  container.classList.remove("hidden");
}

export function clearError(container: HTMLElement): void {
  container.textContent = "";
  container.classList.add("hidden");
}
