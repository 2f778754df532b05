// Application wiring: file loading, panel switching, and selection flow.

import { layoutSankey } from "./sankey.js";
import { buildNetworkScene } from "./scene.js";
import {
  clearError,
  renderDiff,
  renderError,
  renderNetwork,
  renderStreams,
} from "./render.js";
import { ArtifactError, emptyState, loadArtifacts, selectPair, selectTube, ViewState } from "./state.js";

const STREAM_W = 900;
const STREAM_H = 620;

let state: ViewState = emptyState();
let pendingNode: string | null = null;

function byId(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el;
}

function showPanel(panel: "network" | "streams"): void {
  state.panel = panel;
  byId("network-panel").classList.toggle("hidden", panel !== "network");
  byId("streams-panel").classList.toggle("hidden", panel !== "streams");
  byId("tab-network").classList.toggle("active", panel === "network");
  byId("tab-streams").classList.toggle("active", panel === "streams");
}

function onStreamNodeClick(id: string): void {
  if (!pendingNode) {
    pendingNode = id;
    byId("detail-hint").textContent =
      `Selected ${id}; click a second stick to compare, or the same one again.`;
    return;
  }
  const diff = selectPair(state, pendingNode, id);
  pendingNode = null;
  byId("detail-hint").textContent = "";
  renderDiff(byId("detail"), diff);
}

function onTubeClick(index: number): void {
  pendingNode = null;
  const diff = selectTube(state, index);
  renderDiff(byId("detail"), diff);
}

function redraw(): void {
  if (!state.graph || !state.model) return;
  renderNetwork(byId("network-panel"), buildNetworkScene(state.graph), () => undefined);
  renderStreams(
    byId("streams-panel"),
    layoutSankey(state.model, STREAM_W, STREAM_H),
    state.model.periods,
    STREAM_W,
    STREAM_H,
    onTubeClick,
    onStreamNodeClick,
  );
  byId("summary").textContent =
    `${state.graph.nodes.length} nodes, ${state.graph.edges.length} edges | `
    + `${state.model.nodes.length} stream sticks, ${state.model.tubes.length} tubes`;
}

async function readFile(input: HTMLInputElement): Promise<string> {
  const file = input.files?.[0];
  if (!file) throw new Error("no file chosen");
  return file.text();
}

async function onLoadClick(): Promise<void> {
  const banner = byId("error-banner");
  clearError(banner);
  try {
    const gexfText = await readFile(byId("gexf-input") as HTMLInputElement);
    const sankeyText = await readFile(byId("sankey-input") as HTMLInputElement);
    state = loadArtifacts(gexfText, sankeyText);
    redraw();
    showPanel("network");
  } catch (err) {
    const message =
      err instanceof ArtifactError ? err.message : `load failed: ${(err as Error).message}`;
    renderError(banner, message);
  }
}

function init(): void {
  byId("load-button").addEventListener("click", () => void onLoadClick());
  byId("tab-network").addEventListener("click", () => showPanel("network"));
  byId("tab-streams").addEventListener("click", () => showPanel("streams"));
  showPanel("network");
}

document.addEventListener("DOMContentLoaded", init);
