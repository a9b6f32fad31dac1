export { SchemaMismatchError } from "./errors.js";
export { EXPECTED_SCHEMA, parseCsvText, readCsv, requireColumns, numericColumn, finiteColumn } from "./csv.js";
export type { CsvMeta, CsvTable } from "./csv.js";
export { loadManifest, constantNumber, constantCurve, requireConstant } from "./manifest.js";
export type { Manifest } from "./manifest.js";
export { renderHeatmap } from "./heatmap.js";
export { renderScatter } from "./scatter.js";
export { renderRegion } from "./region.js";
export { renderCurve } from "./curve.js";
export { render, renderToString } from "./figures.js";
export type { FigureSpec } from "./figures.js";
export { fig1Specs, main } from "./cli.js";
