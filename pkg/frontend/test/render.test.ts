import { existsSync, mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import {
  SchemaMismatchError,
  fig1Specs,
  main,
  render,
  renderToString,
} from "../src/index.js";

const FIXTURES = fileURLToPath(new URL("./fixtures", import.meta.url));

const countOf = (svg: string, tag: string) => (svg.match(new RegExp(`<${tag}[ /]`, "g")) ?? []).length;

describe("figure templates", () => {
  it("renders the s_max heatmap, skipping infeasible cells", () => {
    const svg = renderToString({
      kind: "heatmap",
      input: join(FIXTURES, "fig1ab.csv"),
      output: "unused.svg",
      x: "a2",
      y: "a3",
      value: "s_max",
    });
    expect(svg.startsWith("<svg ")).toBe(true);
    // background + colorbar(40) + one rect per feasible cell only
    const table = readFileSync(join(FIXTURES, "fig1ab.csv"), "utf-8");
    const feasible = table.split("\n").slice(2).filter((l) => l && !l.includes(",,")).length;
    expect(countOf(svg, "rect")).toBe(1 + 40 + feasible);
  });

  it("renders the pure scatter with the lower-bound polyline overlay", () => {
    const svg = renderToString({
      kind: "scatter",
      input: join(FIXTURES, "fig1c.csv"),
      output: "unused.svg",
      x: "entanglement",
      y: "s_max",
    });
    expect(countOf(svg, "circle")).toBe(60);
    expect(countOf(svg, "polyline")).toBeGreaterThanOrEqual(1); // bound curve
    expect(svg).toContain("stroke-dasharray"); // classical bound line
  });

  it("renders the mixed scatter with both envelope slopes", () => {
    const svg = renderToString({
      kind: "scatter",
      input: join(FIXTURES, "fig1d.csv"),
      output: "unused.svg",
      x: "purity",
      y: "s_max",
    });
    expect(countOf(svg, "circle")).toBe(60);
    expect(countOf(svg, "polyline")).toBe(2); // 4*mu and mu*S_inf lines
  });

  it("renders the region diagram with one cell per grid point", () => {
    const svg = renderToString({
      kind: "region",
      input: join(FIXTURES, "fig1e.csv"),
      output: "unused.svg",
    });
    const rows = readFileSync(join(FIXTURES, "fig1e.csv"), "utf-8").trim().split("\n").length - 2;
    // background + legend(4) + cells
    expect(countOf(svg, "rect")).toBe(1 + 4 + rows);
  });

  it("renders a violation-vs-a curve from the classify output", () => {
    const svg = renderToString({
      kind: "curve",
      input: join(FIXTURES, "fig1e.csv"),
      output: "unused.svg",
      x: "a",
      y: "s_max",
      filter: { column: "mu", value: 1.0 },
    });
    expect(countOf(svg, "polyline")).toBe(1);
    expect(svg).toContain("stroke-dasharray"); // bound at 4
  });

  it("is deterministic for identical inputs", () => {
    const spec = {
      kind: "scatter" as const,
      input: join(FIXTURES, "fig1c.csv"),
      output: "unused.svg",
      x: "entanglement",
      y: "s_max",
    };
    expect(renderToString(spec)).toBe(renderToString(spec));
  });

  it("refuses wrong columns loudly", () => {
    expect(() =>
      renderToString({
        kind: "scatter",
        input: join(FIXTURES, "fig1d.csv"),
        output: "unused.svg",
        x: "entanglement",
        y: "s_max",
      }),
    ).toThrow(SchemaMismatchError);
  });

  it("refuses an empty filter result", () => {
    expect(() =>
      renderToString({
        kind: "curve",
        input: join(FIXTURES, "fig1e.csv"),
        output: "unused.svg",
        x: "a",
        y: "s_max",
        filter: { column: "mu", value: 0.123 },
      }),
    ).toThrow(/no rows/);
  });
});

describe("fig1 preset and CLI", () => {
  it("renders all five panels plus the fig2-style curve", () => {
    const outDir = mkdtempSync(join(tmpdir(), "gbfig-"));
    const specs = fig1Specs(
      join(FIXTURES, "fig1ab.csv"),
      join(FIXTURES, "fig1c.csv"),
      join(FIXTURES, "fig1d.csv"),
      join(FIXTURES, "fig1e.csv"),
      outDir,
    );
    expect(specs.map((s) => s.kind)).toEqual([
      "heatmap",
      "heatmap",
      "scatter",
      "scatter",
      "region",
      "curve",
    ]);
    for (const spec of specs) {
      const path = render(spec);
      expect(existsSync(path)).toBe(true);
      expect(readFileSync(path, "utf-8")).toContain("</svg>");
    }
  });

  it("cli renders a figure and reports schema mismatches with exit 2", () => {
    const outDir = mkdtempSync(join(tmpdir(), "gbfig-"));
    const code = main([
      "render",
      "--kind", "curve",
      "--input", join(FIXTURES, "fig1e.csv"),
      "--x", "a",
      "--y", "s_max",
      "--filter", "mu=1.0",
      "--out", join(outDir, "fig2.svg"),
    ]);
    expect(code).toBe(0);
    expect(existsSync(join(outDir, "fig2.svg"))).toBe(true);

    expect(main(["render", "--kind", "region", "--input", join(FIXTURES, "missing.csv"), "--out", join(outDir, "x.svg")])).toBe(2);
    expect(main(["bogus"])).toBe(2);
    expect(main(["render", "--kind", "scatter", "--input", join(FIXTURES, "fig1d.csv"), "--x", "purity", "--out", join(outDir, "y.svg")])).toBe(2); // missing --y
  });

  it("cli fig1 preset writes six SVGs", () => {
    const outDir = mkdtempSync(join(tmpdir(), "gbfig-"));
    const code = main([
      "fig1",
      "--fig1ab", join(FIXTURES, "fig1ab.csv"),
      "--scatter-pure", join(FIXTURES, "fig1c.csv"),
      "--scatter-mixed", join(FIXTURES, "fig1d.csv"),
      "--classify", join(FIXTURES, "fig1e.csv"),
      "--out-dir", outDir,
    ]);
    expect(code).toBe(0);
    for (const name of ["fig1a", "fig1b", "fig1c", "fig1d", "fig1e", "fig2"]) {
      expect(existsSync(join(outDir, `${name}.svg`))).toBe(true);
    }
  });
});
