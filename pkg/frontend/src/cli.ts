#!/usr/bin/env node
/**
 * Render gaussbell CSV outputs into SVG figures.
 *
 *   gaussbell-figures render --kind heatmap --input fig1ab.csv --x a2 --y a3 \
 *       --value s_max --out fig1a.svg
 *   gaussbell-figures fig1 --fig1ab fig1ab.csv --scatter-pure fig1c.csv \
 *       --scatter-mixed fig1d.csv --classify fig1e.csv --out-dir figures/
 *
 * The fig1 preset renders the five panels (two heatmaps, two bounded
 * scatters, the region diagram) plus a violation-versus-a curve from the
 * classify output at its largest purity.
 */

import { join } from "node:path";
import { pathToFileURL } from "node:url";

import { readCsv, finiteColumn } from "./csv.js";
import { SchemaMismatchError } from "./errors.js";
import { render, type FigureSpec } from "./figures.js";

function parseFlags(argv: string[]): Map<string, string> {
  const flags = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    const value = argv[i + 1];
    if (!key.startsWith("--") || value === undefined) {
      throw new Error(`malformed arguments near ${key}`);
    }
    flags.set(key.slice(2), value);
  }
  return flags;
}

function need(flags: Map<string, string>, name: string): string {
  const value = flags.get(name);
  if (value === undefined) {
    throw new Error(`missing required flag --${name}`);
  }
  return value;
}

function cmdRender(argv: string[]): number {
  const flags = parseFlags(argv);
  const kind = need(flags, "kind");
  const input = need(flags, "input");
  const output = need(flags, "out");
  const common = {
    input,
    output,
    title: flags.get("title"),
    xLabel: flags.get("x-label"),
    yLabel: flags.get("y-label"),
  };
  let spec: FigureSpec;
  if (kind === "heatmap") {
    spec = { kind, ...common, x: need(flags, "x"), y: need(flags, "y"), value: need(flags, "value") };
  } else if (kind === "scatter") {
    spec = { kind, ...common, x: need(flags, "x"), y: need(flags, "y") };
  } else if (kind === "region") {
    spec = { kind, ...common };
  } else if (kind === "curve") {
    const filterSpec = flags.get("filter");
    let filter;
    if (filterSpec) {
      const [column, value] = filterSpec.split("=");
      if (!column || value === undefined || Number.isNaN(Number(value))) {
        throw new Error(`bad --filter ${filterSpec}, expected column=value`);
      }
      filter = { column, value: Number(value) };
    }
    spec = { kind, ...common, x: need(flags, "x"), y: need(flags, "y"), filter };
  } else {
    throw new Error(`unknown figure kind ${kind}`);
  }
  console.log(render(spec));
  return 0;
}

export function fig1Specs(
  fig1ab: string,
  scatterPure: string,
  scatterMixed: string,
  classify: string,
  outDir: string,
): FigureSpec[] {
  const muMax = Math.max(...finiteColumn(readCsv(classify), "mu"));
  return [
    { kind: "heatmap", input: fig1ab, output: join(outDir, "fig1a.svg"),
      x: "a2", y: "a3", value: "s_max", title: "maximum Svetlichny value" },
    { kind: "heatmap", input: fig1ab, output: join(outDir, "fig1b.svg"),
      x: "a2", y: "a3", value: "entanglement", title: "tripartite entanglement" },
    { kind: "scatter", input: scatterPure, output: join(outDir, "fig1c.svg"),
      x: "entanglement", y: "s_max", title: "pure states" },
    { kind: "scatter", input: scatterMixed, output: join(outDir, "fig1d.svg"),
      x: "purity", y: "s_max", title: "mixed states" },
    { kind: "region", input: classify, output: join(outDir, "fig1e.svg") },
    { kind: "curve", input: classify, output: join(outDir, "fig2.svg"),
      x: "a", y: "s_max", filter: { column: "mu", value: muMax },
      title: `violation vs a (mu = ${muMax})` },
  ];
}

function cmdFig1(argv: string[]): number {
  const flags = parseFlags(argv);
  const specs = fig1Specs(
    need(flags, "fig1ab"),
    need(flags, "scatter-pure"),
    need(flags, "scatter-mixed"),
    need(flags, "classify"),
    need(flags, "out-dir"),
  );
  for (const spec of specs) {
    console.log(render(spec));
  }
  return 0;
}

export function main(argv: string[]): number {
  try {
    const [command, ...rest] = argv;
    if (command === "render") return cmdRender(rest);
    if (command === "fig1") return cmdFig1(rest);
    throw new Error(`unknown command ${command ?? "(none)"}; use render or fig1`);
  } catch (error) {
    if (error instanceof SchemaMismatchError) {
      console.error(`schema mismatch: ${error.message}`);
    } else {
      console.error(`error: ${(error as Error).message}`);
    }
    return 2;
  }
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
