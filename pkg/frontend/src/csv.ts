import { readFileSync } from "node:fs";

import { SchemaMismatchError } from "./errors.js";

export const EXPECTED_SCHEMA = "gaussbell-csv/1";

export interface CsvMeta {
  schema: string;
  columns: string[];
  command?: string;
  [key: string]: unknown;
}

export interface CsvTable {
  meta: CsvMeta;
  columns: string[];
  /** Raw cells; empty string marks an infeasible/blank cell. */
  rows: string[][];
}

/** Parse a gaussbell CSV: `# {json}` metadata line, header row, data rows. */
export function parseCsvText(text: string, source = "<string>"): CsvTable {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length < 2 || !lines[0].startsWith("# ")) {
    throw new SchemaMismatchError(`${source}: missing JSON metadata header line`);
  }
  let meta: CsvMeta;
  try {
    meta = JSON.parse(lines[0].slice(2)) as CsvMeta;
  } catch {
    throw new SchemaMismatchError(`${source}: metadata header is not valid JSON`);
  }
  if (meta.schema !== EXPECTED_SCHEMA) {
    throw new SchemaMismatchError(
      `${source}: schema ${JSON.stringify(meta.schema)} != expected ${EXPECTED_SCHEMA}`,
    );
  }
  const columns = lines[1].split(",");
  if (
    !Array.isArray(meta.columns) ||
    meta.columns.length !== columns.length ||
    meta.columns.some((c, i) => c !== columns[i])
  ) {
    throw new SchemaMismatchError(`${source}: header row disagrees with metadata columns`);
  }
  const rows = lines.slice(2).map((line) => line.split(","));
  if (rows.length === 0) {
    throw new SchemaMismatchError(`${source}: no data rows`);
  }
  for (const [i, row] of rows.entries()) {
    if (row.length !== columns.length) {
      throw new SchemaMismatchError(`${source}: row ${i + 1} has ${row.length} cells`);
    }
  }
  return { meta, columns, rows };
}

export function readCsv(path: string): CsvTable {
  return parseCsvText(readFileSync(path, "utf-8"), path);
}

export function requireColumns(table: CsvTable, names: string[], source = "csv"): void {
  const missing = names.filter((n) => !table.columns.includes(n));
  if (missing.length > 0) {
    throw new SchemaMismatchError(
      `${source}: missing columns ${missing.join(", ")} (have ${table.columns.join(", ")})`,
    );
  }
}

/** Numeric column; empty cells become null. */
export function numericColumn(table: CsvTable, name: string): (number | null)[] {
  const index = table.columns.indexOf(name);
  if (index < 0) {
    throw new SchemaMismatchError(`missing column ${name}`);
  }
  return table.rows.map((row) => {
    if (row[index] === "") return null;
    const value = Number(row[index]);
    if (Number.isNaN(value)) {
      throw new SchemaMismatchError(`column ${name}: non-numeric cell ${row[index]}`);
    }
    return value;
  });
}

export function finiteColumn(table: CsvTable, name: string): number[] {
  return numericColumn(table, name).filter((v): v is number => v !== null);
}
