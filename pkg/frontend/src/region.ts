import { interpolateViridis } from "d3";

import { numericColumn, requireColumns, type CsvTable } from "./csv.js";
import { requireConstant, type Manifest } from "./manifest.js";
import { cellEdges } from "./heatmap.js";
import { makeFrame, SvgDocument } from "./svg.js";

export interface RegionOptions {
  title?: string;
}

const TIER_COLORS = {
  separable: "#f7f7f7",
  inseparable: "#c6dbef",
  promiscuous: "#9ecae1",
};

/**
 * Separability/nonlocality region diagram over (z, purity).
 *
 * Cells climb through the cumulative tiers; Svetlichny-nonlocal cells are
 * shaded by s_max between the classical bound and the asymptotic value, both
 * taken from the manifest constants.
 */
export function renderRegion(table: CsvTable, manifest: Manifest, options: RegionOptions = {}): SvgDocument {
  const columns = ["z", "mu", "fully_inseparable", "promiscuous", "svetlichny_nonlocal", "s_max"];
  requireColumns(table, columns, "region input");
  const zs = numericColumn(table, "z") as number[];
  const mus = numericColumn(table, "mu") as number[];
  const inseparable = numericColumn(table, "fully_inseparable") as number[];
  const promiscuous = numericColumn(table, "promiscuous") as number[];
  const nonlocal = numericColumn(table, "svetlichny_nonlocal") as number[];
  const sMax = numericColumn(table, "s_max") as number[];

  const bound = requireConstant(manifest, "classical_bound");
  const sInf = requireConstant(manifest, "s_infinity");

  const zEdges = cellEdges(zs);
  const muEdges = cellEdges(mus);
  const zDomain = [
    Math.min(...Array.from(zEdges.values(), (e) => e[0])),
    Math.max(...Array.from(zEdges.values(), (e) => e[1])),
  ] as [number, number];
  const muDomain = [
    Math.min(...Array.from(muEdges.values(), (e) => e[0])),
    Math.max(...Array.from(muEdges.values(), (e) => e[1])),
  ] as [number, number];

  const frame = makeFrame(zDomain, muDomain, 640, 520, 72);
  const doc = new SvgDocument(frame.width, frame.height);
  for (let i = 0; i < table.rows.length; i += 1) {
    let color: string;
    if (nonlocal[i]) {
      const t = Math.max(0, Math.min(1, (sMax[i] - bound) / (sInf - bound)));
      color = interpolateViridis(0.25 + 0.75 * t);
    } else if (promiscuous[i]) {
      color = TIER_COLORS.promiscuous;
    } else if (inseparable[i]) {
      color = TIER_COLORS.inseparable;
    } else {
      color = TIER_COLORS.separable;
    }
    const [z0, z1] = zEdges.get(zs[i])!;
    const [m0, m1] = muEdges.get(mus[i])!;
    doc.rect(frame.x(z0), frame.y(m1), frame.x(z1) - frame.x(z0), frame.y(m0) - frame.y(m1), color);
  }
  doc.axes(frame, "z", "purity", options.title ?? "state classification");
  const legendX = frame.width - frame.margin.right + 6;
  doc.text(legendX + 7, frame.margin.top - 6, "tiers", "middle", 11);
  const entries: [string, string][] = [
    [TIER_COLORS.separable, "sep"],
    [TIER_COLORS.inseparable, "insep"],
    [TIER_COLORS.promiscuous, "prom"],
    [interpolateViridis(0.7), "nonloc"],
  ];
  entries.forEach(([color, label], i) => {
    doc.rect(legendX, frame.margin.top + 18 * i, 14, 14, color);
    doc.text(legendX + 7, frame.margin.top + 18 * i + 26, label, "middle", 9);
  });
  return doc;
}
