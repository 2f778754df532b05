// Viewer state: loaded artifacts, panel switching, and selection handling.
// Clicking a tube is shorthand for selecting its two endpoint nodes.

import { GexfGraph, parseGexf } from "./gexf.js";
import { diffTerms, parseSankey, SankeyModel, TermDiff } from "./sankey.js";

export type Panel = "network" | "streams";

export type Selection =
  | { kind: "none" }
  | { kind: "node"; id: string }
  | { kind: "tube"; index: number }
  | { kind: "pair"; a: string; b: string };

export interface ViewState {
  graph: GexfGraph | null;
  model: SankeyModel | null;
  panel: Panel;
  selection: Selection;
}

export interface DiffView {
  a: string;
  b: string;
  common: string[];
  onlyA: string[];
  onlyB: string[];
}

export class ArtifactError extends Error {
  readonly file: string;

  constructor(file: string, cause: string) {
    super(`${file}: ${cause}`);
    this.file = file;
  }
}

export function emptyState(): ViewState {
  return { graph: null, model: null, panel: "network", selection: { kind: "none" } };
}

export function loadArtifacts(gexfText: string, sankeyText: string): ViewState {
  let graph: GexfGraph;
  try {
    graph = parseGexf(gexfText);
  } catch (err) {
    throw new ArtifactError("graph.gexf", (err as Error).message);
  }
  let model: SankeyModel;
  try {
    model = parseSankey(sankeyText);
  } catch (err) {
    throw new ArtifactError("streams.json", (err as Error).message);
  }
  return { graph, model, panel: "network", selection: { kind: "none" } };
}

export function setPanel(state: ViewState, panel: Panel): ViewState {
  return { ...state, panel };
}

function toDiff(model: SankeyModel, a: string, b: string): DiffView {
  const diff: TermDiff = diffTerms(model, a, b);
  return { a, b, common: diff.common, onlyA: diff.onlyA, onlyB: diff.onlyB };
}

export function selectPair(state: ViewState, a: string, b: string): DiffView {
  if (!state.model) throw new ArtifactError("streams.json", "no stream model loaded");
  state.selection = { kind: "pair", a, b };
  return toDiff(state.model, a, b);
}

export function selectTube(state: ViewState, index: number): DiffView {
  if (!state.model) throw new ArtifactError("streams.json", "no stream model loaded");
  const tube = state.model.tubes[index];
  if (!tube) throw new ArtifactError("streams.json", `no tube at index ${index}`);
  state.selection = { kind: "tube", index };
  return toDiff(state.model, tube.from, tube.to);
}
