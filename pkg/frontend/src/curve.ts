import { extent } from "d3";

import { numericColumn, requireColumns, type CsvTable } from "./csv.js";
import { SchemaMismatchError } from "./errors.js";
import { constantNumber, type Manifest } from "./manifest.js";
import { makeFrame, SvgDocument } from "./svg.js";

export interface CurveOptions {
  x: string;
  y: string;
  /** Keep only rows where `column` equals `value` (within 1e-12). */
  filter?: { column: string; value: number };
  title?: string;
  xLabel?: string;
  yLabel?: string;
}

/** Violation-versus-parameter curve with the classical bound line. */
export function renderCurve(table: CsvTable, manifest: Manifest, options: CurveOptions): SvgDocument {
  requireColumns(table, [options.x, options.y], "curve input");
  const xs = numericColumn(table, options.x);
  const ys = numericColumn(table, options.y);
  let keep = table.rows.map((_, i) => xs[i] !== null && ys[i] !== null);
  if (options.filter) {
    const fv = numericColumn(table, options.filter.column);
    keep = keep.map((k, i) => k && fv[i] !== null && Math.abs(fv[i]! - options.filter!.value) < 1e-12);
  }
  const points: [number, number][] = [];
  for (let i = 0; i < table.rows.length; i += 1) {
    if (keep[i]) points.push([xs[i]!, ys[i]!]);
  }
  if (points.length === 0) {
    throw new SchemaMismatchError("curve input has no rows after filtering");
  }
  points.sort((a, b) => a[0] - b[0]);

  const bound = constantNumber(manifest, "classical_bound");
  const [xMin, xMax] = extent(points, (p) => p[0]) as [number, number];
  let [yMin, yMax] = extent(points, (p) => p[1]) as [number, number];
  if (bound !== undefined) {
    yMin = Math.min(yMin, bound);
    yMax = Math.max(yMax, bound);
  }
  const frame = makeFrame([xMin, xMax], [yMin, yMax]);
  const doc = new SvgDocument(frame.width, frame.height);
  if (bound !== undefined) {
    const py = frame.y(bound);
    doc.line(frame.x(xMin), py, frame.x(xMax), py, "#444", "6,4");
  }
  doc.polyline(points.map(([x, y]) => [frame.x(x), frame.y(y)] as [number, number]), "#1f77b4");
  for (const [x, y] of points) {
    doc.circle(frame.x(x), frame.y(y), 2.2, "#1f77b4", 1);
  }
  doc.axes(frame, options.xLabel ?? options.x, options.yLabel ?? options.y, options.title ?? "");
  return doc;
}
