import { extent } from "d3";

import { numericColumn, requireColumns, type CsvTable } from "./csv.js";
import { SchemaMismatchError } from "./errors.js";
import { constantCurve, constantNumber, type Manifest } from "./manifest.js";
import { makeFrame, SvgDocument, type Frame } from "./svg.js";

export interface ScatterOptions {
  x: string;
  y: string;
  title?: string;
  xLabel?: string;
  yLabel?: string;
}

/**
 * Scatter plot with analytic bound overlays.
 *
 * Overlays are purely data-driven from the manifest constants: a sampled
 * `lower_bound_curve` polyline, horizontal `classical_bound` / `s_infinity`
 * lines, proportional `lower_slope` / `upper_slope` envelope lines, and
 * vertical `entanglement_threshold` / `purity_cutoff` markers.  Nothing is
 * recomputed here.
 */
export function renderScatter(
  table: CsvTable,
  manifest: Manifest,
  options: ScatterOptions,
): SvgDocument {
  requireColumns(table, [options.x, options.y], "scatter input");
  const xsAll = numericColumn(table, options.x);
  const ysAll = numericColumn(table, options.y);
  const points: [number, number][] = [];
  for (let i = 0; i < xsAll.length; i += 1) {
    if (xsAll[i] !== null && ysAll[i] !== null) points.push([xsAll[i]!, ysAll[i]!]);
  }
  if (points.length === 0) {
    throw new SchemaMismatchError("scatter input has no points");
  }

  const curve = constantCurve(manifest, "lower_bound_curve");
  const classicalBound = constantNumber(manifest, "classical_bound");
  const sInfinity = constantNumber(manifest, "s_infinity");
  const lowerSlope = constantNumber(manifest, "lower_slope");
  const upperSlope = constantNumber(manifest, "upper_slope");
  const eThreshold = constantNumber(manifest, "entanglement_threshold");
  const purityCutoff = constantNumber(manifest, "purity_cutoff");

  let [xMin, xMax] = extent(points, (p) => p[0]) as [number, number];
  let [yMin, yMax] = extent(points, (p) => p[1]) as [number, number];
  if (classicalBound !== undefined) {
    yMin = Math.min(yMin, classicalBound);
    yMax = Math.max(yMax, classicalBound);
  }
  if (sInfinity !== undefined) yMax = Math.max(yMax, sInfinity);
  if (upperSlope !== undefined) yMax = Math.max(yMax, upperSlope * xMax);
  const frame = makeFrame([xMin, xMax], [yMin, yMax]);
  const doc = new SvgDocument(frame.width, frame.height);

  drawOverlays(doc, frame, {
    curve,
    classicalBound,
    sInfinity,
    lowerSlope,
    upperSlope,
    vertical: [eThreshold, purityCutoff].filter((v): v is number => v !== undefined),
  });
  for (const [x, y] of points) {
    doc.circle(frame.x(x), frame.y(y), 2.4, "#1f77b4");
  }
  doc.axes(frame, options.xLabel ?? options.x, options.yLabel ?? options.y, options.title ?? "");
  return doc;
}

interface Overlays {
  curve?: [number, number][];
  classicalBound?: number;
  sInfinity?: number;
  lowerSlope?: number;
  upperSlope?: number;
  vertical: number[];
}

function drawOverlays(doc: SvgDocument, frame: Frame, overlays: Overlays): void {
  const [x0, x1] = frame.x.domain() as [number, number];
  const left = frame.x(x0);
  const right = frame.x(x1);
  if (overlays.classicalBound !== undefined) {
    const py = frame.y(overlays.classicalBound);
    doc.line(left, py, right, py, "#444", "6,4");
  }
  if (overlays.sInfinity !== undefined) {
    const py = frame.y(overlays.sInfinity);
    doc.line(left, py, right, py, "#888", "2,3");
  }
  if (overlays.lowerSlope !== undefined) {
    doc.polyline(
      [
        [frame.x(x0), frame.y(overlays.lowerSlope * x0)],
        [frame.x(x1), frame.y(overlays.lowerSlope * x1)],
      ],
      "#d62728",
    );
  }
  if (overlays.upperSlope !== undefined) {
    doc.polyline(
      [
        [frame.x(x0), frame.y(overlays.upperSlope * x0)],
        [frame.x(x1), frame.y(overlays.upperSlope * x1)],
      ],
      "#2ca02c",
    );
  }
  if (overlays.curve) {
    doc.polyline(
      overlays.curve.map(([x, y]) => [frame.x(x), frame.y(y)] as [number, number]),
      "#d62728",
    );
  }
  const [yLo, yHi] = frame.y.domain() as [number, number];
  for (const xv of overlays.vertical) {
    doc.line(frame.x(xv), frame.y(yLo), frame.x(xv), frame.y(yHi), "#9467bd", "4,3");
  }
}
