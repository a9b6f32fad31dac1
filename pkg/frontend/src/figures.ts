import { mkdirSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";

import { readCsv } from "./csv.js";
import { renderCurve, type CurveOptions } from "./curve.js";
import { renderHeatmap, type HeatmapOptions } from "./heatmap.js";
import { loadManifest } from "./manifest.js";
import { renderRegion, type RegionOptions } from "./region.js";
import { renderScatter, type ScatterOptions } from "./scatter.js";

export type FigureSpec =
  | ({ kind: "heatmap"; input: string; output: string } & HeatmapOptions)
  | ({ kind: "scatter"; input: string; output: string } & ScatterOptions)
  | ({ kind: "region"; input: string; output: string } & RegionOptions)
  | ({ kind: "curve"; input: string; output: string } & CurveOptions);

/** Render a figure to its SVG source (no file output). */
export function renderToString(spec: FigureSpec): string {
  const table = readCsv(spec.input);
  const manifest = loadManifest(spec.input);
  switch (spec.kind) {
    case "heatmap":
      return renderHeatmap(table, spec).toString();
    case "scatter":
      return renderScatter(table, manifest, spec).toString();
    case "region":
      return renderRegion(table, manifest, spec).toString();
    case "curve":
      return renderCurve(table, manifest, spec).toString();
  }
}

/** Render and write the figure file; deterministic for identical inputs. */
export function render(spec: FigureSpec): string {
  const svg = renderToString(spec);
  mkdirSync(dirname(spec.output), { recursive: true });
  writeFileSync(spec.output, svg + "\n", "utf-8");
  return spec.output;
}
