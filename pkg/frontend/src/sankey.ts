// Stream (Sankey) model: parsing, the term-diff set algebra mirrored from
// the pipeline, and a simple column layout with tube widths proportional
// to tube weight.

export interface SankeyPeriod {
  index: number;
  start_year: number;
  end_year: number;
}

export interface SankeyNode {
  id: string;
  period: number;
  entity: string;
  terms: Record<string, number>;
}

export interface SankeyTube {
  from: string;
  to: string;
  weight: number;
  shared_terms: string[];
}

export interface SankeyModel {
  periods: SankeyPeriod[];
  nodes: SankeyNode[];
  tubes: SankeyTube[];
}

export interface TermDiff {
  common: string[];
  onlyA: string[];
  onlyB: string[];
}

export class SankeyParseError extends Error {}

function asArray(value: unknown, what: string): unknown[] {
  if (!Array.isArray(value)) {
    throw new SankeyParseError(`${what} must be an array`);
  }
  return value;
}

export function parseSankey(text: string): SankeyModel {
  let payload: unknown;
  try {
    payload = JSON.parse(text);
  } catch (err) {
    throw new SankeyParseError(`invalid JSON: ${(err as Error).message}`);
  }
  const body = payload as Record<string, unknown>;
  if (typeof body !== "object" || body === null) {
    throw new SankeyParseError("document root must be an object");
  }
  const periods = asArray(body.periods, "periods").map((p) => {
    const row = p as Record<string, unknown>;
    return {
      index: Number(row.index),
      start_year: Number(row.start_year),
      end_year: Number(row.end_year),
    };
  });
  const nodes = asArray(body.nodes, "nodes").map((n) => {
    const row = n as Record<string, unknown>;
    if (typeof row.id !== "string" || typeof row.entity !== "string") {
      throw new SankeyParseError("node missing id or entity");
    }
    const terms = row.terms as Record<string, number>;
    if (typeof terms !== "object" || terms === null) {
      throw new SankeyParseError(`node ${row.id}: terms must be an object`);
    }
    return { id: row.id, period: Number(row.period), entity: row.entity, terms };
  });
  const ids = new Set(nodes.map((n) => n.id));
  const tubes = asArray(body.tubes, "tubes").map((t) => {
    const row = t as Record<string, unknown>;
    if (typeof row.from !== "string" || typeof row.to !== "string") {
      throw new SankeyParseError("tube missing endpoints");
    }
    if (!ids.has(row.from) || !ids.has(row.to)) {
      throw new SankeyParseError(`tube ${row.from} -> ${row.to} references a missing node`);
    }
    return {
      from: row.from,
      to: row.to,
      weight: Number(row.weight),
      shared_terms: asArray(row.shared_terms, "shared_terms").map(String),
    };
  });
  return { periods, nodes, tubes };
}

export function nodeById(model: SankeyModel, id: string): SankeyNode {
  const node = model.nodes.find((n) => n.id === id);
  if (!node) {
    throw new SankeyParseError(`unknown stream node ${id}`);
  }
  return node;
}

// Same set algebra as the pipeline's diff operation; lists come back sorted.
export function diffTerms(model: SankeyModel, a: string, b: string): TermDiff {
  const ta = new Set(Object.keys(nodeById(model, a).terms));
  const tb = new Set(Object.keys(nodeById(model, b).terms));
  const common: string[] = [];
  const onlyA: string[] = [];
  const onlyB: string[] = [];
  for (const t of ta) (tb.has(t) ? common : onlyA).push(t);
  for (const t of tb) if (!ta.has(t)) onlyB.push(t);
  common.sort();
  onlyA.sort();
  onlyB.sort();
  return { common, onlyA, onlyB };
}

export interface LaidOutNode {
  node: SankeyNode;
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface LaidOutTube {
  tube: SankeyTube;
  index: number;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  strokeWidth: number;
}

export interface SankeyLayout {
  nodes: LaidOutNode[];
  tubes: LaidOutTube[];
  columnX: number[];
}

const NODE_WIDTH = 14;
const NODE_GAP = 10;
const TUBE_SCALE = 6;

export function layoutSankey(
  model: SankeyModel,
  width: number,
  height: number,
): SankeyLayout {
  const columns = model.periods.length;
  const columnX = model.periods.map((_, i) =>
    columns > 1 ? 40 + (i * (width - 80)) / (columns - 1) : width / 2,
  );

  const nodes: LaidOutNode[] = [];
  const byId = new Map<string, LaidOutNode>();
  for (const period of model.periods) {
    const column = model.nodes.filter((n) => n.period === period.index);
    const total = column.reduce(
      (sum, n) => sum + Object.values(n.terms).reduce((s, c) => s + c, 0), 0,
    );
    const usable = height - 40 - NODE_GAP * Math.max(column.length - 1, 0);
    let y = 20;
    for (const node of column) {
      const mass = Object.values(node.terms).reduce((s, c) => s + c, 0);
      const h = total > 0 ? Math.max((mass / total) * usable, 6) : 6;
      const laid = {
        node,
        x: columnX[period.index] - NODE_WIDTH / 2,
        y,
        width: NODE_WIDTH,
        height: h,
      };
      nodes.push(laid);
      byId.set(node.id, laid);
      y += h + NODE_GAP;
    }
  }

  const tubes: LaidOutTube[] = model.tubes.map((tube, index) => {
    const a = byId.get(tube.from);
    const b = byId.get(tube.to);
    if (!a || !b) {
      throw new SankeyParseError(`tube ${tube.from} -> ${tube.to} not laid out`);
    }
    return {
      tube,
      index,
      x1: a.x + NODE_WIDTH,
      y1: a.y + a.height / 2,
      x2: b.x,
      y2: b.y + b.height / 2,
      strokeWidth: tube.weight * TUBE_SCALE,
    };
  });
  return { nodes, tubes, columnX };
}
