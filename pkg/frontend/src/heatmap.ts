import { extent, interpolateViridis } from "d3";

import { numericColumn, requireColumns, type CsvTable } from "./csv.js";
import { SchemaMismatchError } from "./errors.js";
import { colorBar, makeFrame, SvgDocument } from "./svg.js";

export interface HeatmapOptions {
  x: string;
  y: string;
  value: string;
  title?: string;
  xLabel?: string;
  yLabel?: string;
}

/** Edges of grid cells from midpoints between consecutive unique coordinates. */
export function cellEdges(values: number[]): Map<number, [number, number]> {
  const unique = Array.from(new Set(values)).sort((a, b) => a - b);
  const edges = new Map<number, [number, number]>();
  for (const [i, v] of unique.entries()) {
    const before = i === 0 ? unique[Math.min(1, unique.length - 1)] - unique[0] : v - unique[i - 1];
    const after = i === unique.length - 1 ? before : unique[i + 1] - v;
    const left = i === 0 ? v - after / 2 : (v + unique[i - 1]) / 2;
    const right = i === unique.length - 1 ? v + before / 2 : (v + unique[i + 1]) / 2;
    edges.set(v, [left, right]);
  }
  return edges;
}

export function renderHeatmap(table: CsvTable, options: HeatmapOptions): SvgDocument {
  requireColumns(table, [options.x, options.y, options.value], "heatmap input");
  const xs = numericColumn(table, options.x);
  const ys = numericColumn(table, options.y);
  const values = numericColumn(table, options.value);

  const filled = values.filter((v): v is number => v !== null);
  if (filled.length === 0) {
    throw new SchemaMismatchError("heatmap input has no feasible cells");
  }
  const [vMin, vMax] = extent(filled) as [number, number];
  const span = vMax - vMin || 1;
  const xEdges = cellEdges(xs.filter((v): v is number => v !== null));
  const yEdges = cellEdges(ys.filter((v): v is number => v !== null));

  const xDomain = [
    Math.min(...Array.from(xEdges.values(), (e) => e[0])),
    Math.max(...Array.from(xEdges.values(), (e) => e[1])),
  ] as [number, number];
  const yDomain = [
    Math.min(...Array.from(yEdges.values(), (e) => e[0])),
    Math.max(...Array.from(yEdges.values(), (e) => e[1])),
  ] as [number, number];

  const frame = makeFrame(xDomain, yDomain, 640, 480, 72);
  const doc = new SvgDocument(frame.width, frame.height);
  for (let i = 0; i < table.rows.length; i += 1) {
    const x = xs[i];
    const y = ys[i];
    const value = values[i];
    if (x === null || y === null || value === null) continue; // infeasible cell
    const [x0, x1] = xEdges.get(x)!;
    const [y0, y1] = yEdges.get(y)!;
    const color = interpolateViridis((value - vMin) / span);
    doc.rect(
      frame.x(x0),
      frame.y(y1),
      frame.x(x1) - frame.x(x0),
      frame.y(y0) - frame.y(y1),
      color,
    );
  }
  doc.axes(frame, options.xLabel ?? options.x, options.yLabel ?? options.y, options.title ?? options.value);
  colorBar(doc, frame, interpolateViridis, vMin.toFixed(2), vMax.toFixed(2));
  return doc;
}
