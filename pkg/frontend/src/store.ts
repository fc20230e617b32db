/**
 * Direct access to the engine's on-disk breakpoint store
 * (`.solowin/breakpoints.json`, schema version 1). Toggling a breakpoint is
 * a file edit the engine picks up on its next run.
 */

import { existsSync, mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { dirname, join } from "node:path";

export interface BreakpointEntry {
  id: number;
  file: string;
  line: number;
  condition: string | null;
  enabled: boolean;
  hit_count: number;
}

interface StoreDocument {
  version: number;
  breakpoints: BreakpointEntry[];
}

function storePath(root: string): string {
  return join(root, ".solowin", "breakpoints.json");
}

export function readBreakpoints(root: string): BreakpointEntry[] {
  const path = storePath(root);
  if (!existsSync(path)) return [];
  const data = JSON.parse(readFileSync(path, "utf-8")) as StoreDocument;
  if (data.version !== 1) {
    throw new Error(`breakpoints.json: unsupported version ${data.version}`);
  }
  return data.breakpoints ?? [];
}

function writeBreakpoints(root: string, breakpoints: BreakpointEntry[]): void {
  const path = storePath(root);
  mkdirSync(dirname(path), { recursive: true });
  const document: StoreDocument = { version: 1, breakpoints };
  writeFileSync(path, JSON.stringify(document, null, 2) + "\n", "utf-8");
}

/** Create (enabled, unconditional) or remove; returns the new presence. */
export function toggleBreakpoint(root: string, file: string, line: number): boolean {
  const breakpoints = readBreakpoints(root);
  const index = breakpoints.findIndex((bp) => bp.file === file && bp.line === line);
  if (index >= 0) {
    breakpoints.splice(index, 1);
    writeBreakpoints(root, breakpoints);
    return false;
  }
  const nextId = breakpoints.reduce((max, bp) => Math.max(max, bp.id), 0) + 1;
  breakpoints.push({
    id: nextId,
    file,
    line,
    condition: null,
    enabled: true,
    hit_count: 0,
  });
  writeBreakpoints(root, breakpoints);
  return true;
}

export function breakpointLines(root: string, file: string): number[] {
  return readBreakpoints(root)
    .filter((bp) => bp.file === file)
    .map((bp) => bp.line)
    .sort((a, b) => a - b);
}
