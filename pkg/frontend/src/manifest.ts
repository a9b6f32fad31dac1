import { existsSync, readFileSync } from "node:fs";

import { SchemaMismatchError } from "./errors.js";
import { EXPECTED_SCHEMA } from "./csv.js";

export interface Manifest {
  schema: string;
  command: string;
  config: Record<string, unknown>;
  seed: number | null;
  code_version: string;
  wall_time_s: number;
  outputs: string[];
  constants: Record<string, unknown>;
}

/** Load the `<csv>.manifest.json` sidecar of a CSV output. */
export function loadManifest(csvPath: string): Manifest {
  const path = `${csvPath}.manifest.json`;
  if (!existsSync(path)) {
    throw new SchemaMismatchError(`missing manifest sidecar ${path}`);
  }
  const manifest = JSON.parse(readFileSync(path, "utf-8")) as Manifest;
  if (manifest.schema !== EXPECTED_SCHEMA) {
    throw new SchemaMismatchError(
      `${path}: schema ${JSON.stringify(manifest.schema)} != expected ${EXPECTED_SCHEMA}`,
    );
  }
  if (typeof manifest.constants !== "object" || manifest.constants === null) {
    throw new SchemaMismatchError(`${path}: missing constants record`);
  }
  return manifest;
}

export function constantNumber(manifest: Manifest, name: string): number | undefined {
  const value = manifest.constants[name];
  return typeof value === "number" ? value : undefined;
}

export function requireConstant(manifest: Manifest, name: string): number {
  const value = constantNumber(manifest, name);
  if (value === undefined) {
    throw new SchemaMismatchError(`manifest constant ${name} missing or not numeric`);
  }
  return value;
}

export function constantCurve(manifest: Manifest, name: string): [number, number][] | undefined {
  const value = manifest.constants[name];
  if (!Array.isArray(value)) return undefined;
  return value.map((pt) => {
    if (!Array.isArray(pt) || pt.length !== 2) {
      throw new SchemaMismatchError(`manifest constant ${name} is not a point list`);
    }
    return [Number(pt[0]), Number(pt[1])];
  });
}
